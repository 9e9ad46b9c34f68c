use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown segment token {0:?}")]
    UnknownToken(String),

    #[error("inventory error: {0}")]
    Inventory(String),

    #[error("{op}: expected {expected} operand(s), got {got}")]
    Arity { op: &'static str, expected: &'static str, got: usize },

    /// Enrichment needs every arc to move exactly one position; an empty label
    /// would make `add_skips(a ε b)` need 1 or 2 skips to suppress `b`.
    #[error("epsilon arc {from} -> {to}: enrichment requires an epsilon-free automaton")]
    EpsilonArc { from: u32, to: u32 },

    #[error("enumeration stopped after {cap} results")]
    EnumerationCap { cap: usize },

    #[error("rule target is not a subset of its focus (monotonicity violated)")]
    Monotonicity,

    #[error("stem {stem:?} rejected: constraint {constraint:?} leaves no analysis")]
    StemRejected { stem: String, constraint: String },

    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },

    #[error("compile error: {0}")]
    Compile(String),

    #[error("lazy expansion budget of {budget} descriptors exceeded ({discovered} discovered)")]
    Budget { budget: usize, discovered: usize },

    #[error("lazy operand cannot answer predecessor queries: {0}")]
    NoReverse(&'static str),

    #[error("malformed dump, line {line}: {msg}")]
    Dump { line: usize, msg: String },
}
