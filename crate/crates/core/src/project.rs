//! Surface projection: drop `repeat`/`skip` and erase mora, sync and position.

use crate::fsa::{Fsa, Label, StateId};
use crate::inventory::Inventory;
use crate::symbol::{CharId, SymbolId, SymbolSet};

/// Project a symbol sequence to its segment characters.
pub fn project_sequence(inventory: &Inventory, word: &[SymbolId]) -> Vec<CharId> {
    word.iter().filter_map(|&s| inventory.char_of(s)).collect()
}

/// Spell a character sequence as a string.
pub fn spell(inventory: &Inventory, chars: &[CharId]) -> String {
    chars.iter().map(|&c| inventory.char_name(c)).collect()
}

/// Erase attributes of every segment in `set` and drop technical symbols.
pub fn erase_attributes(inventory: &Inventory, set: &SymbolSet) -> SymbolSet {
    let mut out = SymbolSet::empty();
    let mut last = None;
    for s in set.iter() {
        if let Some(ch) = inventory.char_of(s) {
            if last != Some(ch) {
                out |= inventory.char_variants(ch);
                last = Some(ch);
            }
        }
    }
    out
}

/// The projected language as an automaton: technical arcs become epsilon moves,
/// which are then removed.
pub fn project_surface(a: &Fsa) -> Fsa {
    let inv = a.inventory().clone();
    let n = a.num_states();
    // epsilon closure over arcs whose label is technical-only
    let closure: Vec<Vec<StateId>> = a
        .states()
        .map(|q| {
            let mut seen = vec![false; n];
            let mut stack = vec![q];
            seen[q as usize] = true;
            while let Some(p) = stack.pop() {
                for t in a.transitions(p) {
                    if t.label.is_technical() && !seen[t.target as usize] {
                        seen[t.target as usize] = true;
                        stack.push(t.target);
                    }
                }
            }
            (0..n as StateId).filter(|&r| seen[r as usize]).collect()
        })
        .collect();
    let mut out = Fsa::new(inv.clone());
    for _ in 1..n {
        out.add_state();
    }
    out.set_start(a.start());
    for q in a.states() {
        let mut arcs = Vec::new();
        for &r in &closure[q as usize] {
            if a.is_final(r) {
                out.set_final(q, true);
            }
            for t in a.transitions(r) {
                let symbols = erase_attributes(&inv, &t.label.symbols);
                if !symbols.is_empty() {
                    arcs.push((Label::new(symbols, t.label.producer), t.target));
                }
            }
        }
        arcs.sort();
        arcs.dedup();
        for (l, r) in arcs {
            out.add_arc(q, l, r);
        }
    }
    out.trim()
}
