//! Representational enrichments that make copying, truncation and infixation
//! expressible by intersection.
//!
//! * [`add_repeats`]: every content arc `q1 -c-> q2` gets a reverse arc
//!   `q2 -repeat-> q1`, so a path can walk back through the string.
//! * [`add_skips`]: every content arc gets a parallel `skip` arc, so a path can
//!   move forward without spelling the segment out.
//! * [`add_self_loops`]: every state gets a `Σ` loop that hosts inserted
//!   material (infixes, fixed melodies).
//!
//! All added arcs are consumers; a morpheme has to produce `repeat`/`skip`
//! (or segments on a self loop) for them to survive closed interpretation.
//! Technical arcs are never mirrored or skipped themselves, which keeps the
//! added arcs in 1:1 correspondence with content arcs. Apply each enrichment
//! once per base, in the order `add_repeats(add_skips(add_self_loops(base)))`.

use crate::fsa::{Fsa, Label};
use crate::symbol::SymbolSet;
use crate::Error;

fn require_epsilon_free(a: &Fsa) -> Result<(), Error> {
    match a.has_epsilon_arc() {
        Some((from, to)) => Err(Error::EpsilonArc { from, to }),
        None => Ok(()),
    }
}

pub fn add_repeats(a: &Fsa) -> Result<Fsa, Error> {
    require_epsilon_free(a)?;
    let mut r = a.clone();
    let repeat = SymbolSet::singleton(crate::SymbolId::REPEAT);
    for (p, l, q) in a.arcs() {
        if l.is_content() {
            r.add_arc(q, Label::consumer(repeat), p);
        }
    }
    Ok(r)
}

/// Self loops get no skip: skipping a loop moves nowhere.
pub fn add_skips(a: &Fsa) -> Result<Fsa, Error> {
    require_epsilon_free(a)?;
    let mut r = a.clone();
    let skip = SymbolSet::singleton(crate::SymbolId::SKIP);
    for (p, l, q) in a.arcs() {
        if l.is_content() && p != q {
            r.add_arc(p, Label::consumer(skip), q);
        }
    }
    Ok(r)
}

pub fn add_self_loops(a: &Fsa) -> Result<Fsa, Error> {
    require_epsilon_free(a)?;
    let mut r = a.clone();
    let sigma = a.inventory().segments();
    for q in a.states() {
        r.add_arc(q, Label::consumer(sigma), q);
    }
    Ok(r)
}

/// All three enrichments in canonical order.
pub fn enrich(a: &Fsa) -> Result<Fsa, Error> {
    add_repeats(&add_skips(&add_self_loops(a)?)?)
}
