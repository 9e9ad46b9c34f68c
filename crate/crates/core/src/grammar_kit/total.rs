use crate::fsa::Fsa;
use crate::regex::Grammar;
use crate::Error;

use super::{bambara, semai};

fn pipeline(g: &Grammar, morpheme: &str, base: &str) -> Result<Fsa, Error> {
    let n = g.inventory().tokenize(base)?.len();
    if n < 2 {
        return Err(Error::Compile(format!("base {base:?} needs at least two segments")));
    }
    g.compile_str(&format!("{morpheme}(base(\"{base}\"))"))
}

/// Total reduplication with the linking vowel `o`.
pub fn bambara_pipeline(noun: &str) -> Result<Fsa, Error> {
    pipeline(bambara(), "noun", noun)
}

/// First-and-last-segment reduplicant prefixed to the base.
pub fn semai_pipeline(base: &str) -> Result<Fsa, Error> {
    pipeline(semai(), "expressive", base)
}
