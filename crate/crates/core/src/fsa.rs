//! Epsilon-free automata with set-valued, producer/consumer-typed labels.

use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

use crate::inventory::Inventory;
use crate::symbol::{CharId, SymbolId, SymbolSet};
use crate::Error;

pub type StateId = u32;

/// Arc label: a set of symbols plus the producer/consumer bit.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    pub symbols: SymbolSet,
    /// `true` for producers, `false` for consumers.
    pub producer: bool,
}

impl Label {
    pub fn new(symbols: SymbolSet, producer: bool) -> Self {
        Label { symbols, producer }
    }

    pub fn producer(symbols: SymbolSet) -> Self {
        Label::new(symbols, true)
    }

    pub fn consumer(symbols: SymbolSet) -> Self {
        Label::new(symbols, false)
    }

    /// Labels made only of `repeat`/`skip` are technical; anything carrying a
    /// segment is content.
    pub fn is_technical(&self) -> bool {
        !self.symbols.is_empty() && self.symbols.iter().all(SymbolId::is_technical)
    }

    pub fn is_content(&self) -> bool {
        self.symbols.iter().any(|s| !s.is_technical())
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", if self.producer { "P" } else { "C" }, self.symbols)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transition {
    pub label: Label,
    pub target: StateId,
}

/// An arc-labelled automaton with a single start state.
///
/// States are `0..num_states()`. No label is ever epsilon: operations that need
/// epsilon moves internally remove them before returning.
#[derive(Clone)]
pub struct Fsa {
    inventory: Arc<Inventory>,
    start: StateId,
    finals: Vec<bool>,
    out: Vec<Vec<Transition>>,
}

impl Fsa {
    /// One non-final start state, no arcs: the empty language.
    pub fn new(inventory: Arc<Inventory>) -> Self {
        Fsa { inventory, start: 0, finals: vec![false], out: vec![Vec::new()] }
    }

    /// Accepts only the empty string.
    pub fn epsilon(inventory: Arc<Inventory>) -> Self {
        let mut a = Fsa::new(inventory);
        a.set_final(0, true);
        a
    }

    /// `S*` for one symbol set, with one pc type.
    pub fn star_of(inventory: Arc<Inventory>, symbols: SymbolSet, producer: bool) -> Self {
        let mut a = Fsa::epsilon(inventory);
        a.add_arc(0, Label::new(symbols, producer), 0);
        a
    }

    /// Σ* over the full alphabet.
    pub fn universal(inventory: Arc<Inventory>, producer: bool) -> Self {
        let sigma = inventory.sigma();
        Fsa::star_of(inventory, sigma, producer)
    }

    /// One arc from start to a final state.
    pub fn single(inventory: Arc<Inventory>, label: Label) -> Self {
        let mut a = Fsa::new(inventory);
        let q = a.add_state();
        a.add_arc(0, label, q);
        a.set_final(q, true);
        a
    }

    pub fn inventory(&self) -> &Arc<Inventory> {
        &self.inventory
    }

    pub fn add_state(&mut self) -> StateId {
        self.finals.push(false);
        self.out.push(Vec::new());
        (self.finals.len() - 1) as StateId
    }

    pub fn add_arc(&mut self, from: StateId, label: Label, to: StateId) {
        assert!((to as usize) < self.finals.len(), "arc target {to} out of range");
        self.out[from as usize].push(Transition { label, target: to });
    }

    pub fn set_final(&mut self, q: StateId, is_final: bool) {
        self.finals[q as usize] = is_final;
    }

    pub fn set_start(&mut self, q: StateId) {
        assert!((q as usize) < self.finals.len());
        self.start = q;
    }

    pub fn start(&self) -> StateId {
        self.start
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.finals[q as usize]
    }

    pub fn finals(&self) -> impl Iterator<Item = StateId> + '_ {
        self.finals.iter().enumerate().filter(|(_, f)| **f).map(|(q, _)| q as StateId)
    }

    pub fn num_states(&self) -> usize {
        self.finals.len()
    }

    pub fn num_arcs(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> {
        0..self.num_states() as StateId
    }

    pub fn transitions(&self, q: StateId) -> &[Transition] {
        &self.out[q as usize]
    }

    /// All arcs as `(from, label, to)`.
    pub fn arcs(&self) -> impl Iterator<Item = (StateId, Label, StateId)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(q, ts)| ts.iter().map(move |t| (q as StateId, t.label, t.target)))
    }

    /// Swap every arc's label through `f`. Arcs mapped to an empty symbol set are
    /// dropped.
    pub fn map_labels(&self, mut f: impl FnMut(&Label) -> Label) -> Fsa {
        let mut a = self.clone();
        for ts in &mut a.out {
            for t in ts.iter_mut() {
                t.label = f(&t.label);
            }
            ts.retain(|t| !t.label.symbols.is_empty());
        }
        a
    }

    pub fn with_pc(&self, producer: bool) -> Fsa {
        self.map_labels(|l| Label::new(l.symbols, producer))
    }

    pub fn has_epsilon_arc(&self) -> Option<(StateId, StateId)> {
        self.arcs().find(|(_, l, _)| l.symbols.is_empty()).map(|(p, _, q)| (p, q))
    }

    /// Membership of a fully specified symbol sequence, ignoring pc bits.
    pub fn accepts(&self, word: &[SymbolId]) -> bool {
        let mut current = vec![false; self.num_states()];
        current[self.start as usize] = true;
        for &sym in word {
            let mut next = vec![false; self.num_states()];
            let mut any = false;
            for (q, on) in current.iter().enumerate() {
                if !on {
                    continue;
                }
                for t in &self.out[q] {
                    if t.label.symbols.contains(sym) {
                        next[t.target as usize] = true;
                        any = true;
                    }
                }
            }
            if !any {
                return false;
            }
            current = next;
        }
        current.iter().zip(&self.finals).any(|(c, f)| *c && *f)
    }

    /// States reachable from start.
    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut stack = vec![self.start];
        seen[self.start as usize] = true;
        while let Some(q) = stack.pop() {
            for t in &self.out[q as usize] {
                if !t.label.symbols.is_empty() && !seen[t.target as usize] {
                    seen[t.target as usize] = true;
                    stack.push(t.target);
                }
            }
        }
        seen
    }

    /// States from which a final state is reachable.
    pub fn coreachable(&self) -> Vec<bool> {
        let n = self.num_states();
        let mut rev: Vec<Vec<StateId>> = vec![Vec::new(); n];
        for (p, l, q) in self.arcs() {
            if !l.symbols.is_empty() {
                rev[q as usize].push(p);
            }
        }
        let mut seen = self.finals.clone();
        let mut stack: Vec<StateId> = self.finals().collect();
        while let Some(q) = stack.pop() {
            for &p in &rev[q as usize] {
                if !seen[p as usize] {
                    seen[p as usize] = true;
                    stack.push(p);
                }
            }
        }
        seen
    }

    /// True iff no final state is reachable from start.
    pub fn is_empty(&self) -> bool {
        let r = self.reachable();
        !self.finals().any(|q| r[q as usize])
    }

    /// Drop useless states and empty-label arcs; renumber states breadth-first
    /// from start so equal machines print identically. An empty language
    /// becomes the one-state, no-arc automaton.
    pub fn trim(&self) -> Fsa {
        let reach = self.reachable();
        let co = self.coreachable();
        let useful: Vec<bool> = reach.iter().zip(&co).map(|(a, b)| *a && *b).collect();
        if !useful[self.start as usize] {
            return Fsa::new(self.inventory.clone());
        }
        let mut map = vec![u32::MAX; self.num_states()];
        let mut order = Vec::new();
        let mut queue = VecDeque::from([self.start]);
        map[self.start as usize] = 0;
        while let Some(q) = queue.pop_front() {
            order.push(q);
            for t in &self.out[q as usize] {
                let r = t.target as usize;
                if useful[r] && !t.label.symbols.is_empty() && map[r] == u32::MAX {
                    map[r] = (order.len() + queue.len()) as u32;
                    queue.push_back(t.target);
                }
            }
        }
        let mut a = Fsa {
            inventory: self.inventory.clone(),
            start: 0,
            finals: order.iter().map(|&q| self.finals[q as usize]).collect(),
            out: vec![Vec::new(); order.len()],
        };
        for (new, &old) in order.iter().enumerate() {
            for t in &self.out[old as usize] {
                let r = map[t.target as usize];
                if r != u32::MAX && !t.label.symbols.is_empty() {
                    a.out[new].push(Transition { label: t.label, target: r });
                }
            }
        }
        a
    }

    pub(crate) fn from_parts(
        inventory: Arc<Inventory>,
        start: StateId,
        finals: Vec<bool>,
        out: Vec<Vec<Transition>>,
    ) -> Fsa {
        Fsa { inventory, start, finals, out }
    }

    pub(crate) fn same_inventory(&self, other: &Fsa) -> bool {
        Arc::ptr_eq(&self.inventory, &other.inventory) || self.inventory == other.inventory
    }
}

impl fmt::Debug for Fsa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::dump::to_text(self))
    }
}

/// Linear producer automaton for a token string.
///
/// Each arc carries every attribute variant of its character (underspecified
/// for mora, sync and position), intersected with `restrict` when given.
pub fn build_from_string(
    inventory: &Arc<Inventory>,
    text: &str,
    restrict: Option<&SymbolSet>,
) -> Result<Fsa, Error> {
    let chars = inventory.tokenize(text)?;
    Ok(build_from_chars(inventory, &chars, restrict, true))
}

pub fn build_from_chars(
    inventory: &Arc<Inventory>,
    chars: &[CharId],
    restrict: Option<&SymbolSet>,
    producer: bool,
) -> Fsa {
    let mut a = Fsa::new(inventory.clone());
    let mut q = 0;
    for &ch in chars {
        let mut set = inventory.char_variants(ch);
        if let Some(r) = restrict {
            set &= *r;
        }
        let next = a.add_state();
        a.add_arc(q, Label::new(set, producer), next);
        q = next;
    }
    a.set_final(q, true);
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inv() -> Arc<Inventory> {
        Arc::new(Inventory::builder().vowels(["a", "u", "o"]).consonants(["w", "l", "b"]).build().unwrap())
    }

    #[test]
    fn wulu_chain() {
        let inv = inv();
        let a = build_from_string(&inv, "w u l u", None).unwrap();
        assert_eq!(a.num_states(), 5);
        assert_eq!(a.num_arcs(), 4);
        for (_, l, _) in a.arcs() {
            assert!(l.producer);
            assert_eq!(l.symbols.len(), 12);
        }
        assert_eq!(a.finals().collect::<Vec<_>>(), vec![4]);
    }

    #[test]
    fn empty_string_is_single_final_state() {
        let a = build_from_string(&inv(), "", None).unwrap();
        assert_eq!(a.num_states(), 1);
        assert_eq!(a.num_arcs(), 0);
        assert!(a.is_final(a.start()));
    }

    #[test]
    fn attribute_spec_restricts_labels() {
        let inv = inv();
        let mora = inv.named_set("mora").unwrap();
        let a = build_from_string(&inv, "a", Some(&mora)).unwrap();
        let (_, l, _) = a.arcs().next().unwrap();
        // 2 sync values x 3 positions
        assert_eq!(l.symbols.len(), 6);
    }

    #[test]
    fn unknown_token_is_named() {
        let err = build_from_string(&inv(), "wuzu", None).unwrap_err();
        assert_eq!(err, Error::UnknownToken("z".into()));
    }

    #[test]
    fn trim_removes_unreachable_and_dead() {
        let inv = inv();
        let mut a = build_from_string(&inv, "ab", None).unwrap();
        let orphan = a.add_state();
        a.add_arc(orphan, Label::producer(inv.segments()), 0);
        let dead = a.add_state();
        a.add_arc(0, Label::producer(inv.segments()), dead);
        let t = a.trim();
        assert_eq!(t.num_states(), 3);
        assert_eq!(t.num_arcs(), 2);
    }

    #[test]
    fn emptiness() {
        let inv = inv();
        assert!(Fsa::new(inv.clone()).is_empty());
        assert!(!build_from_string(&inv, "wulu", None).unwrap().is_empty());
        assert!(!Fsa::epsilon(inv).is_empty());
    }
}
