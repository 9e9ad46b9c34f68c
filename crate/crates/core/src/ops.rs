//! Regular operations and the resource-conscious product.

use std::collections::HashMap;
use std::sync::Arc;

use crate::fsa::{Fsa, Label, StateId, Transition};
use crate::inventory::Inventory;
use crate::symbol::SymbolSet;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CombineKind {
    Concat,
    Union,
    Star,
    Optional,
}

/// Apply a regular operation. Concat and union take one or more operands; star
/// and optional take exactly one. The result is epsilon-free and trimmed.
pub fn combine(kind: CombineKind, operands: &[Fsa]) -> Result<Fsa, Error> {
    match kind {
        CombineKind::Concat | CombineKind::Union if operands.is_empty() => Err(Error::Arity {
            op: if kind == CombineKind::Concat { "concat" } else { "union" },
            expected: ">= 1",
            got: 0,
        }),
        CombineKind::Star | CombineKind::Optional if operands.len() != 1 => Err(Error::Arity {
            op: if kind == CombineKind::Star { "star" } else { "optional" },
            expected: "1",
            got: operands.len(),
        }),
        CombineKind::Concat => Ok(operands[1..].iter().fold(operands[0].clone(), |acc, b| concat(&acc, b))),
        CombineKind::Union => Ok(union(operands)),
        CombineKind::Star => Ok(star(&operands[0])),
        CombineKind::Optional => Ok(optional(&operands[0])),
    }
}

/// Copy `b` into `a`, returning the offset of `b`'s states.
fn append(a: &mut Fsa, b: &Fsa) -> StateId {
    let offset = a.num_states() as StateId;
    for _ in 0..b.num_states() {
        a.add_state();
    }
    for (p, l, q) in b.arcs() {
        a.add_arc(p + offset, l, q + offset);
    }
    for f in b.finals() {
        a.set_final(f + offset, true);
    }
    offset
}

/// Give state `to` copies of the out-arcs of `from` (an epsilon move `to -> from`).
fn copy_out_arcs(a: &mut Fsa, from: StateId, to: StateId) {
    let ts: Vec<Transition> = a.transitions(from).to_vec();
    for t in ts {
        a.add_arc(to, t.label, t.target);
    }
}

pub fn concat(a: &Fsa, b: &Fsa) -> Fsa {
    assert!(a.same_inventory(b), "operands use different inventories");
    let mut r = a.clone();
    let finals_a: Vec<StateId> = a.finals().collect();
    let off = append(&mut r, b);
    let b_start = b.start() + off;
    for &f in &finals_a {
        r.set_final(f, b.is_final(b.start()));
        copy_out_arcs(&mut r, b_start, f);
    }
    r.trim()
}

pub fn union(operands: &[Fsa]) -> Fsa {
    let inv = operands[0].inventory().clone();
    let mut r = Fsa::new(inv);
    let fresh = r.start();
    for op in operands {
        assert!(op.same_inventory(&r), "operands use different inventories");
        let off = append(&mut r, op);
        let s = op.start() + off;
        copy_out_arcs(&mut r, s, fresh);
        if op.is_final(op.start()) {
            r.set_final(fresh, true);
        }
    }
    r.trim()
}

pub fn star(a: &Fsa) -> Fsa {
    let mut r = Fsa::epsilon(a.inventory().clone());
    let fresh = r.start();
    let off = append(&mut r, a);
    let s = a.start() + off;
    copy_out_arcs(&mut r, s, fresh);
    for f in a.finals() {
        copy_out_arcs(&mut r, s, f + off);
    }
    r.trim()
}

pub fn optional(a: &Fsa) -> Fsa {
    let mut r = Fsa::epsilon(a.inventory().clone());
    let fresh = r.start();
    let off = append(&mut r, a);
    copy_out_arcs(&mut r, a.start() + off, fresh);
    r.trim()
}

/// How the product combines the pc bits of two compatible arcs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PcCombine {
    /// Open interpretation: producers dominate.
    Or,
    And,
}

impl PcCombine {
    pub fn apply(self, a: bool, b: bool) -> bool {
        match self {
            PcCombine::Or => a || b,
            PcCombine::And => a && b,
        }
    }
}

/// Product automaton plus the number of state pairs it had to construct
/// before trimming.
pub struct Product {
    pub fsa: Fsa,
    pub constructed: usize,
}

/// Product construction over reachable pairs. Two arcs are compatible iff their
/// symbol sets intersect; the result label is the intersection.
pub fn intersect_with(a: &Fsa, b: &Fsa, pc: PcCombine) -> Product {
    assert!(a.same_inventory(b), "operands use different inventories");
    let mut r = Fsa::new(a.inventory().clone());
    let mut ids: HashMap<(StateId, StateId), StateId> = HashMap::new();
    let mut stack = vec![(a.start(), b.start())];
    ids.insert((a.start(), b.start()), r.start());
    while let Some((p, q)) = stack.pop() {
        let here = ids[&(p, q)];
        r.set_final(here, a.is_final(p) && b.is_final(q));
        for ta in a.transitions(p) {
            for tb in b.transitions(q) {
                let symbols = ta.label.symbols & tb.label.symbols;
                if symbols.is_empty() {
                    continue;
                }
                let key = (ta.target, tb.target);
                let next = match ids.get(&key) {
                    Some(&n) => n,
                    None => {
                        let n = r.add_state();
                        ids.insert(key, n);
                        stack.push(key);
                        n
                    }
                };
                let producer = pc.apply(ta.label.producer, tb.label.producer);
                r.add_arc(here, Label::new(symbols, producer), next);
            }
        }
    }
    Product { constructed: r.num_states(), fsa: r.trim() }
}

/// Open-interpretation intersection: pc bits are OR-ed; the result is trimmed.
pub fn intersect_open(a: &Fsa, b: &Fsa) -> Fsa {
    intersect_with(a, b, PcCombine::Or).fsa
}

/// Closed interpretation: drop every consumer arc, then trim.
pub fn close(a: &Fsa) -> Fsa {
    a.map_labels(|l| if l.producer { *l } else { Label::new(SymbolSet::empty(), false) })
        .trim()
}

/// `alphabet ∖ s`, technical symbols included.
pub fn complement_symbols(inventory: &Arc<Inventory>, s: &SymbolSet) -> SymbolSet {
    inventory.complement(s)
}
