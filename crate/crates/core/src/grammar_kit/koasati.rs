use crate::fsa::Fsa;
use crate::ops::{close, intersect_open};
use crate::Error;

use super::{koasati, Constraint};

fn entry(name: &str) -> Fsa {
    koasati().compile_entry(name).expect("shipped grammar compiles")
}

/// Moraification, first-heavy-syllable marking and positional classification.
pub fn koasati_constraints() -> Vec<Constraint> {
    ["moraification", "mark_first_heavy_syllable", "positional_classification"]
        .into_iter()
        .map(|name| Constraint { name: name.to_string(), fsa: entry(name) })
        .collect()
}

/// The V/h alternant of a vowel-initial stem: a producer vowel from `class`,
/// or a producer `h` followed by a consumer `skip`.
pub fn underspecified_for_voicing(class: &str) -> Result<Fsa, Error> {
    let g = koasati();
    g.compile_str(&format!("underspecified_for_voicing({class})"))
}

pub fn punctual_aspect_reduplication() -> Fsa {
    entry("punctual_aspect_reduplication")
}

pub fn word_level_constraints() -> Fsa {
    entry("word_level_constraints")
}

/// Closed interpretation of word-level constraints, the entry and the
/// reduplicative morpheme.
pub fn wordform(entry: &Fsa) -> Fsa {
    let w = word_level_constraints();
    let m = punctual_aspect_reduplication();
    close(&intersect_open(&intersect_open(&w, entry), &m))
}
