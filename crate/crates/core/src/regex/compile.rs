use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::Arc;

use super::ast::Expr;
use super::rules::{compile_rule, ignore_technicals, not_contains};
use super::Grammar;
use crate::enrich::{add_repeats, add_self_loops, add_skips};
use crate::fsa::{build_from_chars, Fsa, Label};
use crate::lazy::{lazy_close, lazy_enrich, lazy_intersect, EnrichKind, LazyFsa};
use crate::ops::{close, concat, intersect_open, optional, star, union};
use crate::symbol::SymbolSet;
use crate::Error;

/// A compiled subexpression. Symbol-set expressions stay sets as long as
/// possible so that `o & ~':1' & medial` becomes one arc.
enum Value {
    Set(SymbolSet, bool),
    Auto(Fsa),
}

pub(crate) struct Compiler<'g> {
    g: &'g Grammar,
    memo: RefCell<HashMap<(String, bool), Fsa>>,
}

fn compile_err(line: usize, msg: impl std::fmt::Display) -> Error {
    if line > 0 {
        Error::Compile(format!("line {line}: {msg}"))
    } else {
        Error::Compile(msg.to_string())
    }
}

fn line_of(e: &Expr) -> usize {
    match e {
        Expr::Name { line, .. } | Expr::Str { line, .. } | Expr::Rule { line, .. } | Expr::Call { line, .. } => *line,
        _ => 0,
    }
}

impl<'g> Compiler<'g> {
    pub(crate) fn new(g: &'g Grammar) -> Self {
        Compiler { g, memo: RefCell::new(HashMap::new()) }
    }

    fn inv(&self) -> &Arc<crate::Inventory> {
        &self.g.inventory
    }

    fn auto(&self, v: Value) -> Fsa {
        match v {
            Value::Auto(a) => a,
            Value::Set(s, pc) => Fsa::single(self.inv().clone(), Label::new(s, pc)).trim(),
        }
    }

    pub(crate) fn compile(&self, e: &Expr, producer: bool) -> Result<Fsa, Error> {
        Ok(self.auto(self.value(e, producer)?))
    }

    fn set(&self, e: &Expr, producer: bool, what: &str) -> Result<SymbolSet, Error> {
        match self.value(e, producer)? {
            Value::Set(s, _) => Ok(s),
            Value::Auto(_) => Err(compile_err(line_of(e), format!("{what} must be a symbol set, got `{e}`"))),
        }
    }

    fn expand(&self, name: &str, args: &[Expr]) -> Option<Expr> {
        let m = self.g.macros.get(name)?;
        let env: HashMap<&str, &Expr> = m.params.iter().map(String::as_str).zip(args).collect();
        Some(m.body.substitute(&env))
    }

    fn value(&self, e: &Expr, pc: bool) -> Result<Value, Error> {
        let inv = self.inv();
        Ok(match e {
            Expr::Empty => Value::Auto(Fsa::epsilon(inv.clone())),
            Expr::Name { name, line } => {
                if let Some(m) = self.g.macros.get(name) {
                    if !m.params.is_empty() {
                        return Err(compile_err(*line, format!("`{name}` takes {} argument(s)", m.params.len())));
                    }
                    let key = (name.clone(), pc);
                    if let Some(a) = self.memo.borrow().get(&key) {
                        return Ok(Value::Auto(a.clone()));
                    }
                    let v = self.value(&m.body, pc)?;
                    if let Value::Auto(a) = &v {
                        self.memo.borrow_mut().insert(key, a.clone());
                    }
                    v
                } else if let Some(s) = inv.named_set(name) {
                    Value::Set(s, pc)
                } else {
                    return Err(compile_err(*line, format!("unknown name `{name}`")));
                }
            }
            Expr::Str { text, line } => {
                let chars = inv.tokenize(text).map_err(|err| compile_err(*line, err))?;
                Value::Auto(build_from_chars(inv, &chars, None, pc))
            }
            Expr::Concat(v) if v.len() == 1 => self.value(&v[0], pc)?,
            Expr::Concat(v) => {
                let mut acc = Fsa::epsilon(inv.clone());
                for x in v {
                    acc = concat(&acc, &self.compile(x, pc)?);
                }
                Value::Auto(acc)
            }
            Expr::Union(v) => {
                let vals = v.iter().map(|x| self.value(x, pc)).collect::<Result<Vec<_>, _>>()?;
                let first_pc = match &vals[0] {
                    Value::Set(_, p) => Some(*p),
                    Value::Auto(_) => None,
                };
                let folded = first_pc.and_then(|p0| {
                    vals.iter().try_fold(SymbolSet::empty(), |acc, v| match v {
                        Value::Set(s, p) if *p == p0 => Some(acc | *s),
                        _ => None,
                    })
                });
                match (folded, first_pc) {
                    (Some(s), Some(p)) => Value::Set(s, p),
                    _ => Value::Auto(union(&vals.into_iter().map(|v| self.auto(v)).collect::<Vec<_>>())),
                }
            }
            Expr::Star(x) => Value::Auto(star(&self.compile(x, pc)?)),
            Expr::Optional(x) => Value::Auto(optional(&self.compile(x, pc)?)),
            Expr::Intersect(v) => {
                let mut acc = self.value(&v[0], pc)?;
                for x in &v[1..] {
                    acc = match (acc, self.value(x, pc)?) {
                        (Value::Set(a, pa), Value::Set(b, pb)) => Value::Set(a & b, pa || pb),
                        (a, b) => Value::Auto(intersect_open(&self.auto(a), &self.auto(b))),
                    };
                }
                acc
            }
            Expr::Complement(x) => match self.value(x, pc)? {
                Value::Set(s, p) => Value::Set(inv.complement(&s), p),
                Value::Auto(_) => return Err(compile_err(line_of(x), format!("`~` applies to symbol sets only, got `{x}`"))),
            },
            Expr::Rule { x, y, z, line } => {
                let xs = self.set(x, pc, "rule focus")?;
                let ys = self.set(y, pc, "rule target")?;
                let zs = self.set(z, pc, "rule context")?;
                // the target names the licensed refinement of the focus
                let a = compile_rule(inv, &xs, &(xs & ys), &zs, pc).map_err(|err| compile_err(*line, err))?;
                Value::Auto(a)
            }
            Expr::Call { name, args, line } => match name.as_str() {
                "producer" => self.value(&args[0], true)?,
                "consumer" => self.value(&args[0], false)?,
                "stringToAutomaton" => self.value(&args[0], true)?,
                "add_repeats" | "add_skips" | "add_self_loops" => {
                    let a = self.compile(&args[0], pc)?.trim();
                    let r = match name.as_str() {
                        "add_repeats" => add_repeats(&a),
                        "add_skips" => add_skips(&a),
                        _ => add_self_loops(&a),
                    };
                    Value::Auto(r.map_err(|err| compile_err(*line, err))?)
                }
                "ignore_technical_symbols_in" => Value::Auto(ignore_technicals(&self.compile(&args[0], pc)?)),
                "not_contains" => Value::Auto(not_contains(&self.compile(&args[0], pc)?, pc)),
                "closed_interpretation" => Value::Auto(close(&self.compile(&args[0], pc)?)),
                _ => match self.expand(name, args) {
                    Some(body) => self.value(&body, pc)?,
                    None => return Err(compile_err(*line, format!("unknown macro `{name}`"))),
                },
            },
        })
    }

    /// Like [`Compiler::compile`], but closed interpretation, intersection and
    /// enrichment become lazy layers wherever one of their operands is lazy.
    /// Everything below the outermost enrichment is compiled eagerly.
    pub(crate) fn compile_lazy(&self, e: &Expr, pc: bool) -> Result<LazyFsa, Error> {
        Ok(match self.lazy_value(e, pc)? {
            Some(l) => l,
            None => LazyFsa::from_fsa(self.compile(e, pc)?.trim()),
        })
    }

    /// `None` when nothing in `e` benefits from laziness.
    fn lazy_value(&self, e: &Expr, pc: bool) -> Result<Option<LazyFsa>, Error> {
        let kind = |name: &str| match name {
            "add_repeats" => Some(EnrichKind::Repeats),
            "add_skips" => Some(EnrichKind::Skips),
            "add_self_loops" => Some(EnrichKind::SelfLoops),
            _ => None,
        };
        match e {
            Expr::Name { name, .. } if self.g.macros.get(name).is_some_and(|m| m.params.is_empty()) => {
                self.lazy_value(&self.g.macros[name].body, pc)
            }
            Expr::Concat(v) if v.len() == 1 => self.lazy_value(&v[0], pc),
            Expr::Intersect(v) => {
                let parts = v.iter().map(|x| self.lazy_value(x, pc)).collect::<Result<Vec<_>, _>>()?;
                if parts.iter().all(Option::is_none) {
                    return Ok(None);
                }
                let mut acc: Option<LazyFsa> = None;
                for (x, part) in v.iter().zip(parts) {
                    let l = match part {
                        Some(l) => l,
                        None => LazyFsa::from_fsa(self.compile(x, pc)?),
                    };
                    acc = Some(match acc {
                        None => l,
                        Some(a) => lazy_intersect(a, l),
                    });
                }
                Ok(acc)
            }
            Expr::Call { name, args, line } => match name.as_str() {
                "producer" => self.lazy_value(&args[0], true),
                "consumer" => self.lazy_value(&args[0], false),
                "closed_interpretation" => Ok(Some(lazy_close(self.compile_lazy(&args[0], pc)?))),
                n if kind(n).is_some() => {
                    let inner = self.compile_lazy(&args[0], pc)?;
                    lazy_enrich(inner, kind(n).unwrap()).map(Some).map_err(|err| compile_err(*line, err))
                }
                _ => match self.expand(name, args) {
                    Some(body) => self.lazy_value(&body, pc),
                    None => Ok(None),
                },
            },
            _ => Ok(None),
        }
    }
}
