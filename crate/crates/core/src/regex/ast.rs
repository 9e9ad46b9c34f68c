use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// A regular expression over symbol classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// `[]`
    Empty,
    /// A parameter, a zero-argument macro, or a symbol class.
    Name { name: String, line: usize },
    /// `"..."`, tokenized against the inventory.
    Str { text: String, line: usize },
    Concat(Vec<Expr>),
    Union(Vec<Expr>),
    Star(Box<Expr>),
    Optional(Box<Expr>),
    Intersect(Vec<Expr>),
    /// `~ E`, defined on symbol sets only.
    Complement(Box<Expr>),
    /// `X --> ( Y / Z )`
    Rule { x: Box<Expr>, y: Box<Expr>, z: Box<Expr>, line: usize },
    /// Macro or builtin call, including `producer(..)` and `consumer(..)`.
    Call { name: String, args: Vec<Expr>, line: usize },
}

impl Expr {
    pub fn name(name: impl Into<String>) -> Expr {
        Expr::Name { name: name.into(), line: 0 }
    }

    pub fn string(text: impl Into<String>) -> Expr {
        Expr::Str { text: text.into(), line: 0 }
    }

    pub fn call(name: impl Into<String>, args: Vec<Expr>) -> Expr {
        Expr::Call { name: name.into(), args, line: 0 }
    }

    /// Replace parameter names by argument expressions.
    pub fn substitute(&self, env: &HashMap<&str, &Expr>) -> Expr {
        let all = |v: &[Expr]| v.iter().map(|e| e.substitute(env)).collect();
        match self {
            Expr::Name { name, .. } => match env.get(name.as_str()) {
                Some(e) => (*e).clone(),
                None => self.clone(),
            },
            Expr::Empty | Expr::Str { .. } => self.clone(),
            Expr::Concat(v) => Expr::Concat(all(v)),
            Expr::Union(v) => Expr::Union(all(v)),
            Expr::Intersect(v) => Expr::Intersect(all(v)),
            Expr::Star(e) => Expr::Star(Box::new(e.substitute(env))),
            Expr::Optional(e) => Expr::Optional(Box::new(e.substitute(env))),
            Expr::Complement(e) => Expr::Complement(Box::new(e.substitute(env))),
            Expr::Rule { x, y, z, line } => Expr::Rule {
                x: Box::new(x.substitute(env)),
                y: Box::new(y.substitute(env)),
                z: Box::new(z.substitute(env)),
                line: *line,
            },
            Expr::Call { name, args, line } => Expr::Call { name: name.clone(), args: all(args), line: *line },
        }
    }

    /// Every name referenced, called or not, with its line and argument count.
    pub(crate) fn references(&self, out: &mut Vec<(String, usize, Option<usize>)>) {
        match self {
            Expr::Name { name, line } => out.push((name.clone(), *line, None)),
            Expr::Call { name, args, line } => {
                out.push((name.clone(), *line, Some(args.len())));
                args.iter().for_each(|a| a.references(out));
            }
            Expr::Empty | Expr::Str { .. } => {}
            Expr::Concat(v) | Expr::Union(v) | Expr::Intersect(v) => v.iter().for_each(|e| e.references(out)),
            Expr::Star(e) | Expr::Optional(e) | Expr::Complement(e) => e.references(out),
            Expr::Rule { x, y, z, .. } => {
                x.references(out);
                y.references(out);
                z.references(out);
            }
        }
    }
}

fn list(f: &mut fmt::Formatter<'_>, items: &[Expr], sep: &str) -> fmt::Result {
    for (i, e) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        write!(f, "{e}")?;
    }
    Ok(())
}

fn quote_name(name: &str) -> String {
    if name.chars().all(|c| c.is_alphanumeric() || c == '_') {
        name.to_string()
    } else {
        format!("'{name}'")
    }
}

/// Prints in grammar-file syntax, fully parenthesized where precedence matters.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Empty => f.write_str("[]"),
            Expr::Name { name, .. } => f.write_str(&quote_name(name)),
            Expr::Str { text, .. } => write!(f, "\"{text}\""),
            Expr::Concat(v) => {
                f.write_str("[")?;
                list(f, v, ", ")?;
                f.write_str("]")
            }
            Expr::Union(v) => {
                f.write_str("{")?;
                list(f, v, ", ")?;
                f.write_str("}")
            }
            Expr::Star(e) => write!(f, "({e})*"),
            Expr::Optional(e) => write!(f, "({e})^"),
            Expr::Intersect(v) => {
                f.write_str("(")?;
                list(f, v, " & ")?;
                f.write_str(")")
            }
            Expr::Complement(e) => write!(f, "~({e})"),
            Expr::Rule { x, y, z, .. } => write!(f, "({x} --> ({y} / {z}))"),
            Expr::Call { name, args, .. } => {
                write!(f, "{}(", quote_name(name))?;
                list(f, args, ", ")?;
                f.write_str(")")
            }
        }
    }
}

/// `name(Params) := body.`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Macro {
    pub name: String,
    pub params: Vec<String>,
    pub body: Expr,
    pub line: usize,
}

pub type MacroTable = BTreeMap<String, Macro>;
