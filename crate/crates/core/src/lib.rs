//! Finite-state reduplication with resource-conscious interpretation.
//!
//! Morphemes are finite-state automata whose arcs are typed *producer* or
//! *consumer*. Bases are enriched with backward `repeat` arcs, forward `skip`
//! arcs and `Σ` self loops; a reduplicative morpheme then selects a copy by
//! intersection, and closed interpretation keeps only paths where every
//! consumed resource was also produced.
//!
//! ```
//! use std::sync::Arc;
//! use redup::{Inventory, build_from_string, enrich, enumerate::surface_forms};
//!
//! let inv = Arc::new(Inventory::builder().vowels(["a", "u"]).consonants(["w", "l"]).build()?);
//! let base = enrich::enrich(&build_from_string(&inv, "wulu", None)?)?;
//! assert!(base.num_arcs() > 4);
//! let plain = redup::close(&base);
//! let forms: Vec<String> = surface_forms(&plain, 10, 100)?.into_iter().collect();
//! assert_eq!(forms, ["wulu"]);
//! # Ok::<(), redup::Error>(())
//! ```

pub mod dump;
pub mod enrich;
pub mod enumerate;
mod error;
pub mod fsa;
pub mod grammar_kit;
pub mod interpret;
pub mod inventory;
pub mod lazy;
pub mod normalize;
pub mod ops;
pub mod project;
pub mod regex;
pub mod symbol;

pub use error::Error;
pub use fsa::{build_from_chars, build_from_string, Fsa, Label, StateId, Transition};
pub use inventory::Inventory;
pub use ops::{close, intersect_open};
pub use symbol::{CharId, Position, SegClass, Segment, Symbol, SymbolId, SymbolSet};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/automata.md")]
    mod automata {}
    #[doc = include_str!("../../../book/src/interpretation.md")]
    mod interpretation {}
    #[doc = include_str!("../../../book/src/enrichment.md")]
    mod enrichment {}
    #[doc = include_str!("../../../book/src/grammars.md")]
    mod grammars {}
    #[doc = include_str!("../../../book/src/reduplication.md")]
    mod reduplication {}
    #[doc = include_str!("../../../book/src/lazy.md")]
    mod lazy {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
