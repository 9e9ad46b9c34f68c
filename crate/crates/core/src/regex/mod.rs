//! The grammar language: symbol-class regular expressions with macros.
//!
//! A grammar file declares an inventory and a list of definitions:
//!
//! ```text
//! % comments run to the end of the line
//! inventory {
//!   vowel: a i o;
//!   consonant: t h s;
//!   low: a;
//! }
//! heavy_rime := [consumer(mora), consumer(mora)].
//! first_(X) := [not_contains(X), X].
//! ```
//!
//! | syntax | meaning |
//! |---|---|
//! | `[]` | the empty string |
//! | `[E1, E2, ...]` | concatenation |
//! | `{E1, E2, ...}` | union |
//! | `E*`, `E^` | Kleene star, optionality |
//! | `E1 & E2` | intersection (open interpretation) |
//! | `~ S` | complement of a symbol set |
//! | `X --> ( Y / Z )` | monotonic rule: `X` refines to `Y` before `Z` |
//! | `"text"` | a string, tokenized against the inventory |
//! | `name`, `'name'` | a symbol class, character, or zero-argument macro |
//!
//! Symbol classes are `seg`, `sigma` (segments plus `repeat` and `skip`),
//! `vowel`, `consonant`, `mora`, `':1'`, `':0'`, `initial`, `medial`,
//! `final`, `repeat`, `skip`, every declared character and every declared class.
//!
//! Every arc takes its pc bit from the nearest enclosing `producer(..)` or
//! `consumer(..)`, else from the compile default (consumer). Binding strength,
//! loosest first: rule, `&`, `~`, postfix `*`/`^`. A name resolves to a
//! parameter first, then a macro or builtin, then a symbol class.

mod ast;
mod compile;
mod parser;
mod rules;

use std::collections::HashMap;
use std::sync::Arc;

pub use ast::{Expr, Macro, MacroTable};
pub use rules::{compile_rule, ignore_technicals, not_contains};

use crate::fsa::Fsa;
use crate::inventory::Inventory;
use crate::lazy::LazyFsa;
use crate::Error;
use compile::Compiler;

/// Builtin operators and their arities.
pub const BUILTINS: &[(&str, usize)] = &[
    ("producer", 1),
    ("consumer", 1),
    ("stringToAutomaton", 1),
    ("add_repeats", 1),
    ("add_skips", 1),
    ("add_self_loops", 1),
    ("ignore_technical_symbols_in", 1),
    ("not_contains", 1),
    ("closed_interpretation", 1),
];

/// A parsed and validated grammar file.
#[derive(Clone, Debug)]
pub struct Grammar {
    inventory: Arc<Inventory>,
    macros: MacroTable,
    order: Vec<String>,
}

/// Parse and validate a grammar file.
pub fn parse_source(text: &str) -> Result<Grammar, Error> {
    let src = parser::parse_file(text)?;
    Ok(Grammar { inventory: Arc::new(src.inventory), macros: src.macros, order: src.order })
}

/// Compile an expression in the context of `env`'s macros and inventory.
pub fn compile(ast: &Expr, env: &Grammar, producer_default: bool) -> Result<Fsa, Error> {
    Compiler::new(env).compile(ast, producer_default)
}

impl Grammar {
    pub fn inventory(&self) -> &Arc<Inventory> {
        &self.inventory
    }

    pub fn macros(&self) -> &MacroTable {
        &self.macros
    }

    /// Zero-argument definitions, in file order.
    pub fn entry_points(&self) -> impl Iterator<Item = &str> {
        self.order.iter().map(String::as_str).filter(|n| self.macros[*n].params.is_empty())
    }

    /// `main` if defined, else the last zero-argument definition.
    pub fn default_entry(&self) -> Option<&str> {
        if self.macros.get("main").is_some_and(|m| m.params.is_empty()) {
            return Some("main");
        }
        self.entry_points().last()
    }

    /// Parse an expression against this grammar's names.
    pub fn parse_expr(&self, text: &str) -> Result<Expr, Error> {
        let body = parser::parse_expr(text)?;
        let mut table = self.macros.clone();
        let probe = "expression";
        let name = (0..).map(|i| format!("__{probe}{i}")).find(|n| !table.contains_key(n)).unwrap();
        table.insert(name.clone(), Macro { name, params: Vec::new(), body: body.clone(), line: 1 });
        parser::validate(&self.inventory, &table)?;
        Ok(body)
    }

    fn entry_expr(&self, name: &str) -> Result<Expr, Error> {
        match self.macros.get(name) {
            Some(m) if m.params.is_empty() => Ok(Expr::Name { name: name.to_string(), line: m.line }),
            Some(m) => Err(Error::Compile(format!("entry `{name}` takes {} argument(s)", m.params.len()))),
            None => Err(Error::Compile(format!("no definition named `{name}`"))),
        }
    }

    /// Compile with consumer as the default pc.
    pub fn compile(&self, e: &Expr) -> Result<Fsa, Error> {
        compile(e, self, false)
    }

    pub fn compile_entry(&self, name: &str) -> Result<Fsa, Error> {
        Ok(self.compile(&self.entry_expr(name)?)?.trim())
    }

    pub fn compile_str(&self, text: &str) -> Result<Fsa, Error> {
        Ok(self.compile(&self.parse_expr(text)?)?.trim())
    }

    /// Compile several expressions sharing one macro cache.
    pub fn compile_all(&self, exprs: &[Expr]) -> Result<Vec<Fsa>, Error> {
        let c = Compiler::new(self);
        exprs.iter().map(|e| c.compile(e, false).map(|a| a.trim())).collect()
    }

    pub fn compile_lazy(&self, e: &Expr) -> Result<LazyFsa, Error> {
        Compiler::new(self).compile_lazy(e, false)
    }

    pub fn compile_entry_lazy(&self, name: &str) -> Result<LazyFsa, Error> {
        self.compile_lazy(&self.entry_expr(name)?)
    }

    /// Expand a macro call once, by syntactic substitution.
    pub fn expand_call(&self, name: &str, args: &[Expr]) -> Option<Expr> {
        let m = self.macros.get(name)?;
        if m.params.len() != args.len() {
            return None;
        }
        let env: HashMap<&str, &Expr> = m.params.iter().map(String::as_str).zip(args).collect();
        Some(m.body.substitute(&env))
    }
}
