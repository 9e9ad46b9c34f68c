//! Resource-conscious interpretation and parsing.
//!
//! Intersection in open interpretation ORs the pc bits of matched arcs, so a
//! resource produced once may be consumed any number of times. Closed
//! interpretation then discards whatever is still consumer-only. Parsing is
//! the intersection of the grammar with a consumer-typed parse string,
//! followed by closing and a nonemptiness check.

use std::sync::Arc;

pub use crate::ops::{close, intersect_open};

use crate::fsa::{build_from_chars, Fsa, Label};
use crate::inventory::Inventory;
use crate::Error;

/// Consumer chain for a surface string, with `{repeat, skip}` consumer loops at
/// every state so technical arcs in grammar paths can be matched.
pub fn prepare_parse_input(inventory: &Arc<Inventory>, text: &str) -> Result<Fsa, Error> {
    let chars = inventory.tokenize(text)?;
    let mut a = build_from_chars(inventory, &chars, None, false);
    for q in a.states() {
        a.add_arc(q, Label::consumer(inventory.technical()), q);
    }
    Ok(a)
}

/// The closed parse result; empty iff the grammar rejects the string.
pub fn parse(grammar: &Fsa, text: &str) -> Result<Fsa, Error> {
    let input = prepare_parse_input(grammar.inventory(), text)?;
    Ok(close(&intersect_open(grammar, &input)))
}

pub fn accepts(grammar: &Fsa, text: &str) -> Result<bool, Error> {
    Ok(!parse(grammar, text)?.is_empty())
}
