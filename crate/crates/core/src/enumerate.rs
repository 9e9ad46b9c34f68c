//! Bounded language enumeration, used as a brute-force oracle and for word
//! form generation.

use std::collections::{BTreeMap, BTreeSet};

use crate::fsa::{Fsa, Label, StateId};
use crate::project::project_surface;
use crate::symbol::{CharId, SymbolId};
use crate::Error;

/// Default result cap for [`enumerate_language`].
pub const DEFAULT_CAP: usize = 1_000_000;

/// Every accepted symbol sequence of length `<= max_len`.
///
/// Runs the subset construction on the fly, so each string is produced once
/// regardless of nondeterminism. Fails once more than `cap` strings are found.
pub fn enumerate_language(a: &Fsa, max_len: usize, cap: usize) -> Result<BTreeSet<Vec<SymbolId>>, Error> {
    enumerate_by(a, max_len, cap, |l| l.symbols.iter().collect())
}

/// Like [`enumerate_language`] but over an arbitrary projection of labels to
/// letters. Labels projecting to no letter are not traversed.
pub fn enumerate_by<K: Ord + Clone>(
    a: &Fsa,
    max_len: usize,
    cap: usize,
    letters: impl Fn(&Label) -> Vec<K>,
) -> Result<BTreeSet<Vec<K>>, Error> {
    let mut out = BTreeSet::new();
    let mut prefix = Vec::new();
    walk(a, &[a.start()], max_len, cap, &letters, &mut prefix, &mut out)?;
    Ok(out)
}

/// Results gathered before a cap was hit, and whether it was.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Capped<T> {
    pub items: T,
    pub truncated: bool,
}

fn capped<T>(items: T, r: Result<(), Error>) -> Result<Capped<T>, Error> {
    match r {
        Ok(()) => Ok(Capped { items, truncated: false }),
        Err(Error::EnumerationCap { .. }) => Ok(Capped { items, truncated: true }),
        Err(e) => Err(e),
    }
}

fn walk<K: Ord + Clone>(
    a: &Fsa,
    subset: &[StateId],
    budget: usize,
    cap: usize,
    letters: &impl Fn(&Label) -> Vec<K>,
    prefix: &mut Vec<K>,
    out: &mut BTreeSet<Vec<K>>,
) -> Result<(), Error> {
    if subset.iter().any(|&q| a.is_final(q)) {
        if out.len() >= cap {
            return Err(Error::EnumerationCap { cap });
        }
        out.insert(prefix.clone());
    }
    if budget == 0 {
        return Ok(());
    }
    let mut next: BTreeMap<K, Vec<StateId>> = BTreeMap::new();
    for &q in subset {
        for t in a.transitions(q) {
            for k in letters(&t.label) {
                next.entry(k).or_default().push(t.target);
            }
        }
    }
    for (k, mut targets) in next {
        targets.sort_unstable();
        targets.dedup();
        prefix.push(k);
        walk(a, &targets, budget - 1, cap, letters, prefix, out)?;
        prefix.pop();
    }
    Ok(())
}

/// Accepted label paths of length `<= max_len`, in lexicographic order. Meant
/// for deterministic automata, where each path denotes a distinct set of strings.
pub fn enumerate_paths(a: &Fsa, max_len: usize, cap: usize) -> Result<Vec<Vec<Label>>, Error> {
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    paths(a, a.start(), max_len, cap, &mut prefix, &mut out)?;
    out.sort();
    Ok(out)
}

fn paths(
    a: &Fsa,
    q: StateId,
    budget: usize,
    cap: usize,
    prefix: &mut Vec<Label>,
    out: &mut Vec<Vec<Label>>,
) -> Result<(), Error> {
    if a.is_final(q) {
        if out.len() >= cap {
            return Err(Error::EnumerationCap { cap });
        }
        out.push(prefix.clone());
    }
    if budget == 0 {
        return Ok(());
    }
    for t in a.transitions(q) {
        prefix.push(t.label);
        paths(a, t.target, budget - 1, cap, prefix, out)?;
        prefix.pop();
    }
    Ok(())
}

/// Surface forms: technical symbols dropped, attributes erased, each form the
/// concatenation of its segment tokens.
pub fn surface_forms(a: &Fsa, max_len: usize, cap: usize) -> Result<BTreeSet<String>, Error> {
    let r = surface_forms_capped(a, max_len, cap)?;
    if r.truncated {
        return Err(Error::EnumerationCap { cap });
    }
    Ok(r.items)
}

/// [`surface_forms`] that keeps the first `cap` forms instead of failing.
pub fn surface_forms_capped(a: &Fsa, max_len: usize, cap: usize) -> Result<Capped<BTreeSet<String>>, Error> {
    let inv = a.inventory().clone();
    let projected = project_surface(a);
    let letters = |l: &Label| {
        let mut chars: Vec<CharId> = l.symbols.iter().filter_map(|s| inv.char_of(s)).collect();
        chars.dedup();
        chars
    };
    let mut seqs = BTreeSet::new();
    let r = walk(&projected, &[projected.start()], max_len, cap, &letters, &mut Vec::new(), &mut seqs);
    let forms = seqs.into_iter().map(|s| s.iter().map(|&c| inv.char_name(c)).collect()).collect();
    capped(forms, r)
}

/// [`enumerate_paths`] that keeps the first `cap` paths instead of failing.
pub fn enumerate_paths_capped(a: &Fsa, max_len: usize, cap: usize) -> Result<Capped<Vec<Vec<Label>>>, Error> {
    let mut out = Vec::new();
    let r = paths(a, a.start(), max_len, cap, &mut Vec::new(), &mut out);
    out.sort();
    capped(out, r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fsa::{build_from_string, Fsa};
    use crate::inventory::Inventory;
    use crate::ops::{combine, CombineKind};
    use std::sync::Arc;

    #[test]
    fn single_char_chain_lists_variants() {
        let inv = Arc::new(Inventory::builder().vowels(["a"]).consonants(["b"]).build().unwrap());
        let a = build_from_string(&inv, "a", None).unwrap();
        let lang = enumerate_language(&a, 3, DEFAULT_CAP).unwrap();
        assert_eq!(lang.len(), 12);
        assert!(lang.iter().all(|w| w.len() == 1 && inv.char_of(w[0]) == inv.char_id("a")));
    }

    #[test]
    fn star_of_two_symbols() {
        let inv = Arc::new(Inventory::builder().vowels(["a"]).consonants(["b"]).build().unwrap());
        let a_sym = inv.segment(inv.char_id("a").unwrap(), false, false, crate::Position::Medial);
        let b_sym = inv.segment(inv.char_id("b").unwrap(), false, false, crate::Position::Medial);
        let a = Fsa::single(inv.clone(), Label::producer(crate::SymbolSet::singleton(a_sym)));
        let b = Fsa::single(inv.clone(), Label::producer(crate::SymbolSet::singleton(b_sym)));
        let u = combine(CombineKind::Union, &[a, b]).unwrap();
        let s = combine(CombineKind::Star, &[u]).unwrap();
        let lang = enumerate_language(&s, 2, DEFAULT_CAP).unwrap();
        let expected: BTreeSet<Vec<SymbolId>> = [
            vec![],
            vec![a_sym],
            vec![b_sym],
            vec![a_sym, a_sym],
            vec![a_sym, b_sym],
            vec![b_sym, a_sym],
            vec![b_sym, b_sym],
        ]
        .into_iter()
        .collect();
        assert_eq!(lang, expected);
    }

    #[test]
    fn cap_is_enforced() {
        let inv = Arc::new(Inventory::builder().vowels(["a"]).build().unwrap());
        let u = Fsa::universal(inv, true);
        assert_eq!(enumerate_language(&u, 3, 10), Err(Error::EnumerationCap { cap: 10 }));
        let r = surface_forms_capped(&Fsa::universal(u.inventory().clone(), true), 5, 3).unwrap();
        assert!(r.truncated);
        assert_eq!(r.items.len(), 3);
        assert_eq!(surface_forms(&u, 5, 3), Err(Error::EnumerationCap { cap: 3 }));
    }
}
