//! Test-side oracles. Nothing here calls library algorithms beyond reading an
//! automaton's states and arcs.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::Rng;
use redup::{Fsa, Inventory, Label, Position, SymbolId, SymbolSet};

/// Breadth-first NFA simulation.
pub fn member(a: &Fsa, w: &[SymbolId]) -> bool {
    let mut current: BTreeSet<u32> = BTreeSet::from([a.start()]);
    for &s in w {
        current = current
            .iter()
            .flat_map(|&q| a.transitions(q).iter())
            .filter(|t| t.label.symbols.contains(s))
            .map(|t| t.target)
            .collect();
        if current.is_empty() {
            return false;
        }
    }
    current.iter().any(|&q| a.is_final(q))
}

/// Like [`member`], but only along producer arcs.
pub fn member_producer(a: &Fsa, w: &[SymbolId]) -> bool {
    let mut current: BTreeSet<u32> = BTreeSet::from([a.start()]);
    for &s in w {
        current = current
            .iter()
            .flat_map(|&q| a.transitions(q).iter())
            .filter(|t| t.label.producer && t.label.symbols.contains(s))
            .map(|t| t.target)
            .collect();
    }
    current.iter().any(|&q| a.is_final(q))
}

/// Every word over `symbols` of length `<= max_len`.
pub fn all_words(symbols: &[SymbolId], max_len: usize) -> Vec<Vec<SymbolId>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &s in symbols {
                let mut v: Vec<SymbolId> = w.clone();
                v.push(s);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// One vowel and one consonant: 24 segment symbols plus `repeat`, `skip`.
pub fn tiny_inventory() -> Arc<Inventory> {
    Arc::new(Inventory::builder().vowels(["a"]).consonants(["b"]).build().unwrap())
}

/// `n` distinct symbols, technical ones first.
pub fn pick_symbols(inv: &Inventory, n: usize) -> Vec<SymbolId> {
    let a = inv.char_id("a").unwrap();
    let b = inv.char_id("b").unwrap();
    let mut v = vec![SymbolId::REPEAT, SymbolId::SKIP];
    for ch in [a, b] {
        for mora in [false, true] {
            v.push(inv.segment(ch, mora, false, Position::Medial));
        }
    }
    v.truncate(n);
    v
}

/// A random automaton over `symbols` with at most `max_states` states.
/// Labels are nonempty subsets of `symbols`; `producer` fixes every pc bit,
/// `None` draws them at random.
pub fn random_fsa(
    rng: &mut impl Rng,
    inv: &Arc<Inventory>,
    symbols: &[SymbolId],
    max_states: usize,
    producer: Option<bool>,
) -> Fsa {
    let n = rng.gen_range(1..=max_states);
    let mut a = Fsa::new(inv.clone());
    for _ in 1..n {
        a.add_state();
    }
    for q in 0..n as u32 {
        a.set_final(q, rng.gen_bool(0.4));
        for _ in 0..rng.gen_range(0..=3) {
            let mut set = SymbolSet::empty();
            while set.is_empty() {
                for &s in symbols {
                    if rng.gen_bool(0.4) {
                        set.insert(s);
                    }
                }
            }
            let pc = producer.unwrap_or_else(|| rng.gen_bool(0.5));
            a.add_arc(q, Label::new(set, pc), rng.gen_range(0..n as u32));
        }
    }
    a
}

/// `char:sync` for a label whose symbols agree on both, `repeat`/`skip` for
/// technical labels, `None` otherwise.
pub fn render_label(inv: &Inventory, l: &Label) -> Option<String> {
    if l.symbols == SymbolSet::singleton(SymbolId::REPEAT) {
        return Some("repeat".into());
    }
    if l.symbols == SymbolSet::singleton(SymbolId::SKIP) {
        return Some("skip".into());
    }
    let mut keys = l.symbols.iter().map(|s| match inv.symbol(s) {
        redup::Symbol::Segment(seg) => Some((seg.ch, seg.sync)),
        _ => None,
    });
    let first = keys.next()??;
    if keys.any(|k| k != Some(first)) {
        return None;
    }
    Some(format!("{}:{}", inv.char_name(first.0), first.1 as u8))
}

/// Surface spelling of a symbol word.
pub fn spell(inv: &Inventory, w: &[SymbolId]) -> String {
    w.iter().filter_map(|&s| inv.char_of(s)).map(|c| inv.char_name(c).to_string()).collect()
}
