//! Text dump and graph export.
//!
//! The dump is line oriented:
//!
//! ```text
//! fsa states=3 start=0
//! final 2
//! 0 1 P w<:1>
//! 1 2 C seg|repeat
//! ```
//!
//! Arc lines are `from to pc symbol-set`, with `P` for producers and `C` for
//! consumers. Symbol sets use [`Inventory::format_set`] notation.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::fsa::{Fsa, Label, StateId};
use crate::inventory::Inventory;
use crate::Error;

pub fn to_text(a: &Fsa) -> String {
    let inv = a.inventory();
    let mut s = String::new();
    let _ = writeln!(s, "fsa states={} start={}", a.num_states(), a.start());
    for f in a.finals() {
        let _ = writeln!(s, "final {f}");
    }
    for (p, l, q) in a.arcs() {
        let pc = if l.producer { 'P' } else { 'C' };
        let _ = writeln!(s, "{p} {q} {pc} {}", inv.format_set(&l.symbols));
    }
    s
}

pub fn from_text(inventory: &Arc<Inventory>, text: &str) -> Result<Fsa, Error> {
    let err = |line: usize, msg: &str| Error::Dump { line, msg: msg.to_string() };
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (n0, header) = lines.next().ok_or_else(|| err(1, "empty dump"))?;
    let mut states = None;
    let mut start = None;
    let mut words = header.split_whitespace();
    if words.next() != Some("fsa") {
        return Err(err(n0 + 1, "expected `fsa` header"));
    }
    for w in words {
        match w.split_once('=') {
            Some(("states", v)) => states = v.parse::<usize>().ok(),
            Some(("start", v)) => start = v.parse::<StateId>().ok(),
            _ => return Err(err(n0 + 1, "unknown header field")),
        }
    }
    let states = states.filter(|&n| n > 0).ok_or_else(|| err(n0 + 1, "missing state count"))?;
    let start = start.filter(|&s| (s as usize) < states).ok_or_else(|| err(n0 + 1, "bad start state"))?;
    let mut a = Fsa::new(inventory.clone());
    for _ in 1..states {
        a.add_state();
    }
    a.set_start(start);
    let state = |n: usize, s: &str| -> Result<StateId, Error> {
        s.parse::<StateId>()
            .ok()
            .filter(|&q| (q as usize) < states)
            .ok_or_else(|| err(n + 1, "bad state id"))
    };
    for (n, line) in lines {
        let mut parts = line.splitn(4, ' ');
        let first = parts.next().unwrap_or_default();
        if first == "final" {
            let q = state(n, parts.next().unwrap_or_default())?;
            a.set_final(q, true);
            continue;
        }
        let p = state(n, first)?;
        let q = state(n, parts.next().unwrap_or_default())?;
        let producer = match parts.next() {
            Some("P") => true,
            Some("C") => false,
            _ => return Err(err(n + 1, "pc must be P or C")),
        };
        let set = inventory
            .parse_set(parts.next().unwrap_or_default())
            .map_err(|e| err(n + 1, &e.to_string()))?;
        a.add_arc(p, Label::new(set, producer), q);
    }
    Ok(a)
}

/// Graphviz export. Producer arcs are drawn bold, consumer arcs dashed.
pub fn to_dot(a: &Fsa, name: &str) -> String {
    let inv = a.inventory();
    let mut s = String::new();
    let _ = writeln!(s, "digraph \"{}\" {{", name.replace('"', "'"));
    let _ = writeln!(s, "  rankdir=LR;");
    let _ = writeln!(s, "  node [shape=circle];");
    let _ = writeln!(s, "  __start [shape=point];");
    let _ = writeln!(s, "  __start -> {};", a.start());
    for q in a.states() {
        if a.is_final(q) {
            let _ = writeln!(s, "  {q} [shape=doublecircle];");
        }
    }
    for (p, l, q) in a.arcs() {
        let style = if l.producer { "bold" } else { "dashed" };
        let label = inv.format_set(&l.symbols).replace('"', "\\\"");
        let _ = writeln!(s, "  {p} -> {q} [label=\"{label}\", style={style}];");
    }
    s.push_str("}\n");
    s
}
