//! The three shipped analyses and the stem and lexicon pipeline.
//!
//! The grammars live in `grammars/*.g` and are compiled on first use. The
//! functions here give typed access to their parts, and [`build_stem`] and
//! [`Lexicon`] make the construction order explicit: constraints are applied to
//! each bare stem, the result is enriched, and only then are bases unioned.

mod koasati;
mod total;

use std::sync::{Arc, OnceLock};

pub use koasati::{
    koasati_constraints, punctual_aspect_reduplication, underspecified_for_voicing, word_level_constraints,
    wordform,
};
pub use total::{bambara_pipeline, semai_pipeline};

use crate::enrich::enrich;
use crate::fsa::{build_from_string, Fsa};
use crate::inventory::Inventory;
use crate::ops::{concat, intersect_open, union};
use crate::regex::{ignore_technicals, parse_source, Grammar};
use crate::Error;

pub const KOASATI_SOURCE: &str = include_str!("../../grammars/koasati.g");
pub const BAMBARA_SOURCE: &str = include_str!("../../grammars/bambara.g");
pub const SEMAI_SOURCE: &str = include_str!("../../grammars/semai.g");

fn load(cell: &'static OnceLock<Grammar>, source: &str) -> &'static Grammar {
    cell.get_or_init(|| parse_source(source).expect("shipped grammar parses"))
}

pub fn koasati() -> &'static Grammar {
    static G: OnceLock<Grammar> = OnceLock::new();
    load(&G, KOASATI_SOURCE)
}

pub fn bambara() -> &'static Grammar {
    static G: OnceLock<Grammar> = OnceLock::new();
    load(&G, BAMBARA_SOURCE)
}

pub fn semai() -> &'static Grammar {
    static G: OnceLock<Grammar> = OnceLock::new();
    load(&G, SEMAI_SOURCE)
}

/// A named constraint automaton.
#[derive(Clone, Debug)]
pub struct Constraint {
    pub name: String,
    pub fsa: Fsa,
}

/// `stem(FirstSeg, String)`: an optional first-segment expression and a body.
#[derive(Clone, Debug)]
pub struct StemSpec {
    pub name: String,
    pub first_seg: Option<Fsa>,
    pub body: String,
}

impl StemSpec {
    pub fn new(name: impl Into<String>, body: impl Into<String>) -> Self {
        StemSpec { name: name.into(), first_seg: None, body: body.into() }
    }

    pub fn with_first_seg(mut self, first_seg: Fsa) -> Self {
        self.first_seg = Some(first_seg);
        self
    }
}

/// The bare (unenriched) stem: its producer string restricted by all
/// constraints, each made transparent to technical symbols.
pub fn constrain_stem(spec: &StemSpec, inventory: &Arc<Inventory>, constraints: &[Constraint]) -> Result<Fsa, Error> {
    if spec.body.trim().is_empty() {
        return Err(Error::Compile(format!("stem {:?} has an empty body", spec.name)));
    }
    let body = build_from_string(inventory, &spec.body, None)?;
    let mut acc = match &spec.first_seg {
        Some(first) => concat(first, &body),
        None => body,
    };
    for c in constraints {
        acc = intersect_open(&acc, &ignore_technicals(&c.fsa));
        if acc.is_empty() {
            return Err(Error::StemRejected { stem: spec.name.clone(), constraint: c.name.clone() });
        }
    }
    Ok(acc)
}

/// A lexicon entry: the constrained stem with repeats, skips and self loops.
pub fn build_stem(spec: &StemSpec, inventory: &Arc<Inventory>, constraints: &[Constraint]) -> Result<Fsa, Error> {
    enrich(&constrain_stem(spec, inventory, constraints)?)
}

/// Enriched bases, unioned on demand.
///
/// Enrichment refers to string positions, so it must happen per base: a
/// `repeat` arc added after union could lead from one base's arc back into a
/// state shared with another base and copy material that was never there.
#[derive(Clone, Debug)]
pub struct Lexicon {
    inventory: Arc<Inventory>,
    entries: Vec<Fsa>,
}

impl Lexicon {
    pub fn new(inventory: Arc<Inventory>) -> Self {
        Lexicon { inventory, entries: Vec::new() }
    }

    /// Enrich a bare base and add it.
    pub fn add_base(&mut self, base: &Fsa) -> Result<(), Error> {
        self.entries.push(enrich(&base.trim())?);
        Ok(())
    }

    pub fn add_stem(&mut self, spec: &StemSpec, constraints: &[Constraint]) -> Result<(), Error> {
        self.entries.push(build_stem(spec, &self.inventory, constraints)?);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The union of all entries; the empty language when there are none.
    pub fn fsa(&self) -> Fsa {
        if self.entries.is_empty() {
            return Fsa::new(self.inventory.clone());
        }
        union(&self.entries)
    }
}
