//! Trimming, determinization and minimization.
//!
//! Determinization works over letters `(symbol, pc)`: arcs that differ only in
//! their pc bit are distinct letters and are never merged. Each output arc
//! carries the set of symbols that lead to the same target with the same pc, so
//! the result is deterministic per pc class and canonical once minimized.

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::fsa::{Fsa, Label, StateId, Transition};
use crate::symbol::SymbolSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormalizeMode {
    Trim,
    Determinize,
    Minimize,
}

pub fn normalize(a: &Fsa, mode: NormalizeMode) -> Fsa {
    match mode {
        NormalizeMode::Trim => a.trim(),
        NormalizeMode::Determinize => determinize(a),
        NormalizeMode::Minimize => minimize(a),
    }
}

/// Subset construction. Output states are numbered breadth-first.
pub fn determinize(a: &Fsa) -> Fsa {
    let a = a.trim();
    let size = a.inventory().alphabet_size();
    let mut out = Fsa::new(a.inventory().clone());
    let mut ids: HashMap<Vec<StateId>, StateId> = HashMap::new();
    let mut queue = VecDeque::new();
    let start = vec![a.start()];
    ids.insert(start.clone(), out.start());
    queue.push_back(start);
    // per letter (symbol * 2 + pc) the target subset under construction
    let mut targets: Vec<Vec<StateId>> = vec![Vec::new(); size * 2];
    while let Some(subset) = queue.pop_front() {
        let here = ids[&subset];
        out.set_final(here, subset.iter().any(|&q| a.is_final(q)));
        let mut touched: Vec<usize> = Vec::new();
        for &q in &subset {
            for t in a.transitions(q) {
                for sym in t.label.symbols.iter() {
                    let letter = sym.index() * 2 + t.label.producer as usize;
                    if targets[letter].is_empty() {
                        touched.push(letter);
                    }
                    targets[letter].push(t.target);
                }
            }
        }
        // group letters by (target subset, pc)
        let mut groups: BTreeMap<(Vec<StateId>, bool), SymbolSet> = BTreeMap::new();
        for letter in touched {
            let mut tgt = std::mem::take(&mut targets[letter]);
            tgt.sort_unstable();
            tgt.dedup();
            let sym = crate::SymbolId((letter / 2) as u16);
            groups.entry((tgt, letter % 2 == 1)).or_default().insert(sym);
        }
        for ((tgt, producer), symbols) in groups {
            let next = match ids.get(&tgt) {
                Some(&n) => n,
                None => {
                    let n = out.add_state();
                    ids.insert(tgt.clone(), n);
                    queue.push_back(tgt);
                    n
                }
            };
            out.add_arc(here, Label::new(symbols, producer), next);
        }
    }
    out.trim()
}

/// Merge arcs that share source, target and pc into one arc with the union of
/// their symbols.
fn merge_parallel(a: &Fsa) -> Fsa {
    let mut out: Vec<Vec<Transition>> = Vec::with_capacity(a.num_states());
    for q in a.states() {
        let mut merged: BTreeMap<(StateId, bool), SymbolSet> = BTreeMap::new();
        for t in a.transitions(q) {
            *merged.entry((t.target, t.label.producer)).or_default() |= t.label.symbols;
        }
        out.push(
            merged
                .into_iter()
                .map(|((target, producer), symbols)| Transition { label: Label::new(symbols, producer), target })
                .collect(),
        );
    }
    Fsa::from_parts(a.inventory().clone(), a.start(), a.states().map(|q| a.is_final(q)).collect(), out)
}

/// A state's class and its outgoing (target class, pc, symbols) groups.
type Signature = (usize, Vec<(usize, bool, SymbolSet)>);

/// Canonical minimal deterministic automaton over `(symbol, pc)` letters,
/// computed by Moore partition refinement.
pub fn minimize(a: &Fsa) -> Fsa {
    let d = determinize(a);
    let n = d.num_states();
    let mut class: Vec<usize> = d.states().map(|q| d.is_final(q) as usize).collect();
    let mut num_classes = if class.iter().all(|&c| c == class[0]) { 1 } else { 2 };
    loop {
        let mut sig_ids: HashMap<Signature, usize> = HashMap::new();
        let mut next = vec![0; n];
        for q in d.states() {
            let mut by_target: BTreeMap<(usize, bool), SymbolSet> = BTreeMap::new();
            for t in d.transitions(q) {
                *by_target.entry((class[t.target as usize], t.label.producer)).or_default() |= t.label.symbols;
            }
            let sig: Vec<(usize, bool, SymbolSet)> = by_target.into_iter().map(|((c, p), s)| (c, p, s)).collect();
            let key = (class[q as usize], sig);
            let len = sig_ids.len();
            next[q as usize] = *sig_ids.entry(key).or_insert(len);
        }
        let count = sig_ids.len();
        class = next;
        if count == num_classes {
            break;
        }
        num_classes = count;
    }
    let mut quotient = Fsa::new(d.inventory().clone());
    for _ in 1..num_classes {
        quotient.add_state();
    }
    quotient.set_start(class[d.start() as usize] as StateId);
    let mut done = vec![false; num_classes];
    for q in d.states() {
        let c = class[q as usize];
        if d.is_final(q) {
            quotient.set_final(c as StateId, true);
        }
        if done[c] {
            continue;
        }
        done[c] = true;
        for t in d.transitions(q) {
            quotient.add_arc(c as StateId, t.label, class[t.target as usize] as StateId);
        }
    }
    merge_parallel(&quotient).trim()
}

/// Arc listing of a deterministic automaton in a numbering that depends only on
/// its structure: breadth-first from start, arcs ordered by `(pc, symbols)`.
pub fn canonical_form(a: &Fsa) -> (Vec<bool>, Vec<Vec<(Label, StateId)>>) {
    let mut map: HashMap<StateId, StateId> = HashMap::new();
    let mut order = Vec::new();
    let mut queue = VecDeque::from([a.start()]);
    map.insert(a.start(), 0);
    while let Some(q) = queue.pop_front() {
        order.push(q);
        let mut ts: Vec<&Transition> = a.transitions(q).iter().collect();
        ts.sort_by_key(|t| (t.label.producer, t.label.symbols));
        for t in ts {
            if !map.contains_key(&t.target) {
                map.insert(t.target, map.len() as StateId);
                queue.push_back(t.target);
            }
        }
    }
    let finals = order.iter().map(|&q| a.is_final(q)).collect();
    let arcs = order
        .iter()
        .map(|&q| {
            let mut v: Vec<(Label, StateId)> = a.transitions(q).iter().map(|t| (t.label, map[&t.target])).collect();
            v.sort();
            v
        })
        .collect();
    (finals, arcs)
}

/// Structural isomorphism of two deterministic automata.
pub fn isomorphic(a: &Fsa, b: &Fsa) -> bool {
    canonical_form(a) == canonical_form(b)
}

/// Language equality (including pc bits) via minimal machines.
pub fn equivalent(a: &Fsa, b: &Fsa) -> bool {
    isomorphic(&minimize(a), &minimize(b))
}
