//! Grammar-file lexer and recursive-descent parser.

use std::collections::{BTreeMap, HashMap, HashSet};

use super::ast::{Expr, Macro, MacroTable};
use super::BUILTINS;
use crate::inventory::{Inventory, RESERVED_NAMES};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Quoted(String),
    Str(String),
    LBrack,
    RBrack,
    LBrace,
    RBrace,
    LParen,
    RParen,
    Comma,
    Dot,
    Star,
    Caret,
    Amp,
    Tilde,
    Slash,
    Define,
    Arrow,
    Colon,
    Semi,
}

fn syntax(line: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { line, msg: msg.into() }
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, Error> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut it = text.chars().peekable();
    while let Some(c) = it.next() {
        let tok = match c {
            '\n' => {
                line += 1;
                continue;
            }
            c if c.is_whitespace() => continue,
            '%' => {
                while it.peek().is_some_and(|&c| c != '\n') {
                    it.next();
                }
                continue;
            }
            '[' => Tok::LBrack,
            ']' => Tok::RBrack,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '.' => Tok::Dot,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '&' => Tok::Amp,
            '~' => Tok::Tilde,
            '/' => Tok::Slash,
            ';' => Tok::Semi,
            ':' if it.peek() == Some(&'=') => {
                it.next();
                Tok::Define
            }
            ':' => Tok::Colon,
            '-' => {
                if it.next() == Some('-') && it.next() == Some('>') {
                    Tok::Arrow
                } else {
                    return Err(syntax(line, "expected `-->`"));
                }
            }
            '\'' | '"' => {
                let mut s = String::new();
                loop {
                    match it.next() {
                        Some(q) if q == c => break,
                        Some('\n') | None => return Err(syntax(line, "unterminated quote")),
                        Some(ch) => s.push(ch),
                    }
                }
                if c == '"' {
                    Tok::Str(s)
                } else {
                    Tok::Quoted(s)
                }
            }
            c if is_ident_char(c) => {
                let mut s = c.to_string();
                while let Some(&n) = it.peek() {
                    if !is_ident_char(n) {
                        break;
                    }
                    s.push(n);
                    it.next();
                }
                Tok::Ident(s)
            }
            c => return Err(syntax(line, format!("unexpected character {c:?}"))),
        };
        out.push((tok, line));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn line(&self) -> usize {
        match self.toks.get(self.pos) {
            Some((_, l)) => *l,
            None => self.toks.last().map_or(1, |(_, l)| *l),
        }
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), Error> {
        if self.eat(&t) {
            Ok(())
        } else {
            Err(self.unexpected(what))
        }
    }

    fn unexpected(&self, what: &str) -> Error {
        match self.peek() {
            Some(t) => syntax(self.line(), format!("expected {what}, found {}", describe(t))),
            None => syntax(self.line(), format!("expected {what}, found end of file")),
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, Error> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn expr(&mut self) -> Result<Expr, Error> {
        let line = self.line();
        let x = self.inter()?;
        if !self.eat(&Tok::Arrow) {
            return Ok(x);
        }
        self.expect(Tok::LParen, "`(` after `-->`")?;
        let y = self.inter()?;
        self.expect(Tok::Slash, "`/` in rule")?;
        if self.peek() == Some(&Tok::Ident("_".into())) {
            self.pos += 1;
        }
        let z = self.inter()?;
        if self.peek() == Some(&Tok::Ident("_".into())) {
            return Err(syntax(self.line(), "left contexts are not supported; write `X --> ( Y / Z )` with a right context Z"));
        }
        self.expect(Tok::RParen, "`)` closing the rule")?;
        Ok(Expr::Rule { x: Box::new(x), y: Box::new(y), z: Box::new(z), line })
    }

    fn inter(&mut self) -> Result<Expr, Error> {
        let mut items = vec![self.unary()?];
        while self.eat(&Tok::Amp) {
            items.push(self.unary()?);
        }
        Ok(if items.len() == 1 { items.pop().unwrap() } else { Expr::Intersect(items) })
    }

    fn unary(&mut self) -> Result<Expr, Error> {
        if self.eat(&Tok::Tilde) {
            return Ok(Expr::Complement(Box::new(self.unary()?)));
        }
        let mut e = self.primary()?;
        loop {
            if self.eat(&Tok::Star) {
                e = Expr::Star(Box::new(e));
            } else if self.eat(&Tok::Caret) {
                e = Expr::Optional(Box::new(e));
            } else {
                return Ok(e);
            }
        }
    }

    fn items(&mut self, close: Tok, what: &str) -> Result<Vec<Expr>, Error> {
        let mut items = Vec::new();
        if self.eat(&close) {
            return Ok(items);
        }
        loop {
            items.push(self.expr()?);
            if self.eat(&close) {
                return Ok(items);
            }
            self.expect(Tok::Comma, what)?;
        }
    }

    fn primary(&mut self) -> Result<Expr, Error> {
        let line = self.line();
        match self.bump() {
            Some(Tok::LBrack) => {
                let items = self.items(Tok::RBrack, "`,` or `]`")?;
                Ok(if items.is_empty() { Expr::Empty } else { Expr::Concat(items) })
            }
            Some(Tok::LBrace) => {
                let items = self.items(Tok::RBrace, "`,` or `}`")?;
                if items.is_empty() {
                    return Err(syntax(line, "empty union `{}`"));
                }
                Ok(Expr::Union(items))
            }
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Some(Tok::Str(text)) => Ok(Expr::Str { text, line }),
            Some(Tok::Quoted(name)) => Ok(Expr::Name { name, line }),
            Some(Tok::Ident(name)) => {
                if self.eat(&Tok::LParen) {
                    let args = self.items(Tok::RParen, "`,` or `)`")?;
                    Ok(Expr::Call { name, args, line })
                } else {
                    Ok(Expr::Name { name, line })
                }
            }
            _ => {
                self.pos -= 1;
                Err(self.unexpected("an expression"))
            }
        }
    }

    fn inventory(&mut self) -> Result<Inventory, Error> {
        let line = self.line();
        self.expect(Tok::LBrace, "`{` after `inventory`")?;
        let mut builder = Inventory::builder();
        let mut seen = HashSet::new();
        while !self.eat(&Tok::RBrace) {
            let class_line = self.line();
            let class = self.ident("a class name or `}`")?;
            self.expect(Tok::Colon, "`:` after the class name")?;
            let mut members = Vec::new();
            loop {
                match self.bump() {
                    Some(Tok::Ident(s)) | Some(Tok::Quoted(s)) => members.push(s),
                    Some(Tok::Semi) => break,
                    _ => {
                        self.pos -= 1;
                        return Err(self.unexpected("a segment token or `;`"));
                    }
                }
            }
            if !seen.insert(class.clone()) {
                return Err(syntax(class_line, format!("class {class:?} declared twice")));
            }
            builder = match class.as_str() {
                "vowel" => builder.vowels(members),
                "consonant" => builder.consonants(members),
                _ => builder.class(class, members),
            };
        }
        builder.build().map_err(|e| syntax(line, e.to_string()))
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Quoted(s) => format!("'{s}'"),
        Tok::Str(s) => format!("\"{s}\""),
        Tok::LBrack => "`[`".into(),
        Tok::RBrack => "`]`".into(),
        Tok::LBrace => "`{`".into(),
        Tok::RBrace => "`}`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Dot => "`.`".into(),
        Tok::Star => "`*`".into(),
        Tok::Caret => "`^`".into(),
        Tok::Amp => "`&`".into(),
        Tok::Tilde => "`~`".into(),
        Tok::Slash => "`/`".into(),
        Tok::Define => "`:=`".into(),
        Tok::Arrow => "`-->`".into(),
        Tok::Colon => "`:`".into(),
        Tok::Semi => "`;`".into(),
    }
}

#[derive(Debug)]
pub(crate) struct Source {
    pub inventory: Inventory,
    pub macros: MacroTable,
    pub order: Vec<String>,
}

pub(crate) fn parse_file(text: &str) -> Result<Source, Error> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let mut inventory = None;
    let mut defs = Vec::new();
    while p.peek().is_some() {
        let line = p.line();
        let name = p.ident("a definition or `inventory`")?;
        if name == "inventory" && p.peek() == Some(&Tok::LBrace) {
            if inventory.is_some() {
                return Err(syntax(line, "second inventory section"));
            }
            inventory = Some(p.inventory()?);
            continue;
        }
        let mut params = Vec::new();
        if p.eat(&Tok::LParen) {
            loop {
                params.push(p.ident("a parameter name")?);
                if p.eat(&Tok::RParen) {
                    break;
                }
                p.expect(Tok::Comma, "`,` or `)`")?;
            }
        }
        p.expect(Tok::Define, "`:=`")?;
        let body = p.expr()?;
        p.expect(Tok::Dot, "`.` ending the definition")?;
        defs.push(Macro { name, params, body, line });
    }
    let inventory = inventory.ok_or_else(|| syntax(1, "missing `inventory { ... }` section"))?;
    let mut macros = BTreeMap::new();
    let mut order = Vec::new();
    for m in defs {
        order.push(m.name.clone());
        if let Some(old) = macros.insert(m.name.clone(), m) {
            return Err(syntax(macros[&old.name].line, format!("`{}` defined twice", old.name)));
        }
    }
    validate(&inventory, &macros)?;
    Ok(Source { inventory, macros, order })
}

/// Names, arities, string literals and recursion.
pub(crate) fn validate(inventory: &Inventory, macros: &MacroTable) -> Result<(), Error> {
    for m in macros.values() {
        if BUILTINS.iter().any(|(b, _)| *b == m.name) || RESERVED_NAMES.contains(&m.name.as_str()) {
            return Err(syntax(m.line, format!("`{}` is a reserved name", m.name)));
        }
        let mut seen = HashSet::new();
        for p in &m.params {
            if !p.starts_with(|c: char| c.is_uppercase()) {
                return Err(syntax(m.line, format!("parameter `{p}` must start with a capital letter")));
            }
            if !seen.insert(p) {
                return Err(syntax(m.line, format!("parameter `{p}` repeated")));
            }
        }
        check_strings(inventory, &m.body)?;
        let mut refs = Vec::new();
        m.body.references(&mut refs);
        for (name, line, args) in refs {
            let is_param = m.params.contains(&name);
            let expected = if let Some(callee) = macros.get(&name) {
                Some(callee.params.len())
            } else {
                BUILTINS.iter().find(|(b, _)| *b == name).map(|(_, n)| *n)
            };
            match (args, is_param, expected) {
                (None, true, _) => {}
                (Some(_), true, _) => return Err(syntax(line, format!("parameter `{name}` cannot be called"))),
                (got, false, Some(n)) if got.unwrap_or(0) != n => {
                    return Err(syntax(
                        line,
                        format!("`{name}` takes {n} argument(s), {} given", got.unwrap_or(0)),
                    ))
                }
                (_, false, Some(_)) => {}
                (None, false, None) if inventory.named_set(&name).is_some() => {}
                (None, false, None) => return Err(syntax(line, format!("unknown name `{name}`"))),
                (Some(_), false, None) => return Err(syntax(line, format!("unknown macro `{name}`"))),
            }
        }
    }
    check_recursion(macros)
}

fn check_strings(inventory: &Inventory, e: &Expr) -> Result<(), Error> {
    match e {
        Expr::Str { text, line } => inventory.tokenize(text).map(|_| ()).map_err(|err| syntax(*line, err.to_string())),
        Expr::Empty | Expr::Name { .. } => Ok(()),
        Expr::Concat(v) | Expr::Union(v) | Expr::Intersect(v) | Expr::Call { args: v, .. } => {
            v.iter().try_for_each(|x| check_strings(inventory, x))
        }
        Expr::Star(x) | Expr::Optional(x) | Expr::Complement(x) => check_strings(inventory, x),
        Expr::Rule { x, y, z, .. } => [x, y, z].iter().try_for_each(|x| check_strings(inventory, x)),
    }
}

fn check_recursion(macros: &MacroTable) -> Result<(), Error> {
    let edges: HashMap<&str, Vec<String>> = macros
        .values()
        .map(|m| {
            let mut refs = Vec::new();
            m.body.references(&mut refs);
            let callees = refs
                .into_iter()
                .map(|(n, _, _)| n)
                .filter(|n| !m.params.contains(n) && macros.contains_key(n))
                .collect();
            (m.name.as_str(), callees)
        })
        .collect();
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state: HashMap<&str, u8> = HashMap::new();
    fn visit<'a>(
        n: &'a str,
        edges: &'a HashMap<&str, Vec<String>>,
        state: &mut HashMap<&'a str, u8>,
        path: &mut Vec<&'a str>,
    ) -> Option<Vec<&'a str>> {
        match state.get(n) {
            Some(2) => return None,
            Some(1) => {
                let from = path.iter().position(|p| *p == n).unwrap_or(0);
                let mut cycle = path[from..].to_vec();
                cycle.push(n);
                return Some(cycle);
            }
            _ => {}
        }
        state.insert(n, 1);
        path.push(n);
        for c in &edges[n] {
            if let Some(cycle) = visit(c, edges, state, path) {
                return Some(cycle);
            }
        }
        path.pop();
        state.insert(n, 2);
        None
    }
    for m in macros.values() {
        if let Some(cycle) = visit(&m.name, &edges, &mut state, &mut Vec::new()) {
            let line = macros[cycle[0]].line;
            return Err(syntax(line, format!("recursive definition: {}", cycle.join(" -> "))));
        }
    }
    Ok(())
}

/// Parse a single expression (no trailing `.`).
pub(crate) fn parse_expr(text: &str) -> Result<Expr, Error> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.unexpected("end of expression"));
    }
    Ok(e)
}
