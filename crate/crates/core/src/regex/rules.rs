//! Constraint constructions: monotonic rules, factor exclusion, and the
//! ignore operator.

use std::sync::Arc;

use crate::fsa::{Fsa, Label};
use crate::inventory::Inventory;
use crate::normalize::determinize;
use crate::ops::concat;
use crate::symbol::SymbolSet;
use crate::Error;

/// `X --> ( Y / Z )`: no symbol of `X ∖ Y` may be immediately followed by a
/// symbol of `Z`. Nothing is required of a string-final symbol.
///
/// Deterministic, two states, both final; `Y ⊆ X` is required.
pub fn compile_rule(
    inventory: &Arc<Inventory>,
    x: &SymbolSet,
    y: &SymbolSet,
    z: &SymbolSet,
    producer: bool,
) -> Result<Fsa, Error> {
    if !y.is_subset(x) {
        return Err(Error::Monotonicity);
    }
    let sigma = inventory.sigma();
    let d = *x - *y;
    let mut a = Fsa::epsilon(inventory.clone());
    let pending = a.add_state();
    a.set_final(pending, true);
    let arc = |a: &mut Fsa, from, set: SymbolSet, to| {
        if !set.is_empty() {
            a.add_arc(from, Label::new(set, producer), to);
        }
    };
    arc(&mut a, 0, d, pending);
    arc(&mut a, 0, sigma - d, 0);
    arc(&mut a, pending, d - *z, pending);
    arc(&mut a, pending, (sigma - d) - *z, 0);
    Ok(a)
}

/// Strings with no factor in `L(x)`: the complement of `Σ* x Σ*`.
pub fn not_contains(x: &Fsa, producer: bool) -> Fsa {
    let inv = x.inventory().clone();
    let sigma = inv.sigma();
    let any = Fsa::star_of(inv.clone(), sigma, false);
    let pattern = concat(&concat(&any, &x.with_pc(false)), &any);
    let mut d = determinize(&pattern);
    let sink = d.add_state();
    for q in d.states() {
        let covered = d.transitions(q).iter().fold(SymbolSet::empty(), |acc, t| acc | t.label.symbols);
        let missing = sigma - covered;
        if !missing.is_empty() {
            d.add_arc(q, Label::consumer(missing), sink);
        }
    }
    for q in d.states() {
        let f = d.is_final(q);
        d.set_final(q, !f);
    }
    d.with_pc(producer).trim()
}

/// Make `a` transparent to `repeat` and `skip`: technical symbols are removed
/// from every label and every state gets a consumer `{repeat, skip}` loop, so
/// technical symbols may be interleaved anywhere and are never required.
pub fn ignore_technicals(a: &Fsa) -> Fsa {
    let inv = a.inventory().clone();
    let tech = inv.technical();
    let mut r = a.map_labels(|l| Label::new(l.symbols - tech, l.producer));
    for q in r.states() {
        r.add_arc(q, Label::consumer(tech), q);
    }
    r
}
