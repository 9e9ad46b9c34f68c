use std::sync::Arc;

use redup::enrich::{add_self_loops, enrich};
use redup::grammar_kit::{bambara, koasati};
use redup::lazy::{lazy_close, lazy_enrich, lazy_enrich_all, lazy_intersect, materialize, EnrichKind, LazyFsa, DEFAULT_BUDGET};
use redup::normalize::{equivalent, isomorphic, minimize};
use redup::ops::{close, intersect_open};
use redup::{build_from_string, Error, Fsa, Inventory};

fn inv() -> Arc<Inventory> {
    Arc::new(Inventory::builder().vowels(["u", "o"]).consonants(["w", "l"]).build().unwrap())
}

#[test]
fn lazy_self_loops() {
    let inv = inv();
    let a = build_from_string(&inv, "wulu", None).unwrap();
    let l = lazy_enrich(a.clone(), EnrichKind::SelfLoops).unwrap();
    assert!(equivalent(&materialize(&l, DEFAULT_BUDGET).unwrap(), &add_self_loops(&a).unwrap()));
}

#[test]
fn lazy_enrichment_chain() {
    let inv = inv();
    let a = build_from_string(&inv, "wulu", None).unwrap();
    let l = lazy_enrich_all(a.clone()).unwrap();
    let m = materialize(&l, DEFAULT_BUDGET).unwrap();
    assert!(isomorphic(&minimize(&m), &minimize(&enrich(&a).unwrap())));
}

#[test]
fn start_only_expansion() {
    let inv = inv();
    let l = lazy_enrich_all(build_from_string(&inv, "wulu", None).unwrap()).unwrap();
    l.expand(&l.start());
    assert_eq!(l.cached(), 1);
}

#[test]
fn wrapper_is_identity() {
    let g = bambara();
    let a = g.compile_entry("wulu").unwrap();
    let m = materialize(&LazyFsa::from(&a), DEFAULT_BUDGET).unwrap();
    assert_eq!(redup::dump::to_text(&m), redup::dump::to_text(&a));
}

#[test]
fn budget_error() {
    let inv = inv();
    let a = build_from_string(&inv, "w", None).unwrap();
    assert_eq!(materialize(&LazyFsa::from(a), 1).unwrap_err(), Error::Budget { budget: 1, discovered: 2 });
}

#[test]
fn lazy_bambara_matches_eager() {
    let g = bambara();
    let base = g.compile_str("stringToAutomaton(\"wulu\") & ignore_technical_symbols_in(synced_constituent)").unwrap();
    let morpheme = g.compile_entry("reduplication").unwrap();
    let eager = close(&intersect_open(&enrich(&base).unwrap(), &morpheme));
    let lazy = lazy_close(lazy_intersect(lazy_enrich_all(base).unwrap(), morpheme));
    let m = materialize(&lazy, DEFAULT_BUDGET).unwrap();
    assert!(isomorphic(&minimize(&m), &minimize(&eager)));
}

#[test]
fn universal_producer_intersection() {
    let inv = inv();
    let a = build_from_string(&inv, "wulu", None).unwrap().with_pc(false);
    let l = lazy_intersect(a.clone(), Fsa::universal(inv.clone(), true));
    assert!(equivalent(&materialize(&l, DEFAULT_BUDGET).unwrap(), &a.with_pc(true)));
}

#[test]
fn each_descriptor_is_expanded_once() {
    let g = koasati();
    let l = g.compile_entry_lazy("wordform_tahaspin").unwrap();
    let m = materialize(&l, DEFAULT_BUDGET).unwrap();
    let again = materialize(&l, DEFAULT_BUDGET).unwrap();
    assert_eq!(redup::dump::to_text(&m), redup::dump::to_text(&again));
    let top = &l.metrics()[0];
    assert_eq!(top.layer, "close");
    assert_eq!(top.expanded, m.num_states());
    assert_eq!(l.cached(), m.num_states());
    assert!(top.cache_hits >= m.num_states());
}

#[test]
fn koasati_lazy_builds_fewer_product_states() {
    let g = koasati();
    let get = |n: &str| g.compile_entry(n).unwrap();
    let (w, s, m) = (get("word_level_constraints"), get("tahaspin"), get("punctual_aspect_reduplication"));
    let first = redup::ops::intersect_with(&w, &s, redup::ops::PcCombine::Or);
    let second = redup::ops::intersect_with(&first.fsa, &m, redup::ops::PcCombine::Or);
    let l = g.compile_entry_lazy("wordform_tahaspin").unwrap();
    materialize(&l, DEFAULT_BUDGET).unwrap();
    assert!(l.product_descriptors() < first.constructed + second.constructed);
}

#[test]
fn concurrent_materialization_computes_once() {
    let g = koasati();
    let l = g.compile_entry_lazy("wordform_aklatlin").unwrap();
    let dumps: Vec<String> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..4)
            .map(|_| s.spawn(|| redup::dump::to_text(&materialize(&l, DEFAULT_BUDGET).unwrap())))
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    // discovery order differs between threads only if expansion did
    assert!(dumps.windows(2).all(|w| w[0] == w[1]));
    assert_eq!(l.metrics()[0].expanded, l.cached());
}

#[test]
fn repeats_need_predecessors() {
    let inv = inv();
    let a = build_from_string(&inv, "wu", None).unwrap();
    let i = lazy_intersect(a.clone(), a);
    assert!(matches!(lazy_enrich(i, EnrichKind::Repeats), Err(Error::NoReverse(_))));
}
