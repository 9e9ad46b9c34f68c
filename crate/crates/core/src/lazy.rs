//! On-demand enrichment and intersection.
//!
//! A [`LazyFsa`] is a tree of expansion rules over an eager leaf. States are
//! [`Descriptor`]s, discovered only by following arcs from the start state, and
//! each node memoizes the expansion of every descriptor it has seen. Nodes may be
//! shared between threads; a node's memo table is locked while it computes an
//! expansion, so concurrent requests for one descriptor compute it once.
//!
//! All three enrichments have local rules. Self loops and skips only look at a
//! state's own out-arcs. The repeat rule mirrors arcs *into* a state, so its
//! operand must answer predecessor queries: eager leaves and enrichment layers
//! can, intersections cannot (their reverse pairs may not be reachable from the
//! start). In practice the base lexicon is stored eagerly and enriched lazily.

use std::collections::{HashMap, VecDeque};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use crate::fsa::{Fsa, Label, StateId};
use crate::inventory::Inventory;
use crate::symbol::{SymbolId, SymbolSet};
use crate::Error;

/// Opaque state key of a lazy automaton.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Descriptor {
    State(StateId),
    Pair(Arc<(Descriptor, Descriptor)>),
}

impl Descriptor {
    fn pair(a: Descriptor, b: Descriptor) -> Descriptor {
        Descriptor::Pair(Arc::new((a, b)))
    }
}

/// Out-arcs and finality of one descriptor.
#[derive(Clone, Debug)]
pub struct Expansion {
    pub is_final: bool,
    pub arcs: Vec<(Label, Descriptor)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnrichKind {
    Repeats,
    Skips,
    SelfLoops,
}

enum Rule {
    Eager { fsa: Fsa, reverse: OnceLock<Vec<Vec<(Label, StateId)>>> },
    Enrich { inner: LazyFsa, kind: EnrichKind },
    Intersect { a: LazyFsa, b: LazyFsa },
    Close { inner: LazyFsa },
}

struct Node {
    rule: Rule,
    inventory: Arc<Inventory>,
    cache: Mutex<HashMap<Descriptor, Arc<Expansion>>>,
    expanded: AtomicUsize,
    hits: AtomicUsize,
}

/// Counters for one layer of a lazy automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerMetrics {
    pub layer: &'static str,
    /// Descriptors whose expansion was computed.
    pub expanded: usize,
    /// Expansion requests answered from the memo table.
    pub cache_hits: usize,
}

/// An automaton presented as memoized, on-demand state expansion.
#[derive(Clone)]
pub struct LazyFsa(Arc<Node>);

impl From<Fsa> for LazyFsa {
    fn from(fsa: Fsa) -> Self {
        LazyFsa::from_fsa(fsa)
    }
}

impl From<&Fsa> for LazyFsa {
    fn from(fsa: &Fsa) -> Self {
        LazyFsa::from_fsa(fsa.clone())
    }
}

impl LazyFsa {
    fn new(rule: Rule, inventory: Arc<Inventory>) -> LazyFsa {
        LazyFsa(Arc::new(Node {
            rule,
            inventory,
            cache: Mutex::new(HashMap::new()),
            expanded: AtomicUsize::new(0),
            hits: AtomicUsize::new(0),
        }))
    }

    /// Wrap an eager automaton.
    pub fn from_fsa(fsa: Fsa) -> LazyFsa {
        let inv = fsa.inventory().clone();
        LazyFsa::new(Rule::Eager { fsa, reverse: OnceLock::new() }, inv)
    }

    pub fn inventory(&self) -> &Arc<Inventory> {
        &self.0.inventory
    }

    pub fn start(&self) -> Descriptor {
        match &self.0.rule {
            Rule::Eager { fsa, .. } => Descriptor::State(fsa.start()),
            Rule::Enrich { inner, .. } | Rule::Close { inner } => inner.start(),
            Rule::Intersect { a, b } => Descriptor::pair(a.start(), b.start()),
        }
    }

    /// Whether [`LazyFsa::predecessors`] is available.
    pub fn supports_reverse(&self) -> bool {
        match &self.0.rule {
            Rule::Eager { .. } => true,
            Rule::Enrich { inner, .. } => inner.supports_reverse(),
            Rule::Intersect { .. } | Rule::Close { .. } => false,
        }
    }

    /// Memoized expansion of `d`.
    pub fn expand(&self, d: &Descriptor) -> Arc<Expansion> {
        let mut cache = self.0.cache.lock().unwrap_or_else(|e| e.into_inner());
        if let Some(e) = cache.get(d) {
            self.0.hits.fetch_add(1, Ordering::Relaxed);
            return e.clone();
        }
        let e = Arc::new(self.compute(d));
        self.0.expanded.fetch_add(1, Ordering::Relaxed);
        cache.insert(d.clone(), e.clone());
        e
    }

    fn compute(&self, d: &Descriptor) -> Expansion {
        let inv = &self.0.inventory;
        match &self.0.rule {
            Rule::Eager { fsa, .. } => {
                let Descriptor::State(q) = d else { unreachable!("eager leaf got {d:?}") };
                Expansion {
                    is_final: fsa.is_final(*q),
                    arcs: fsa.transitions(*q).iter().map(|t| (t.label, Descriptor::State(t.target))).collect(),
                }
            }
            Rule::Enrich { inner, kind } => {
                let base = inner.expand(d);
                let mut arcs = base.arcs.clone();
                match kind {
                    EnrichKind::SelfLoops => arcs.push((Label::consumer(inv.segments()), d.clone())),
                    EnrichKind::Skips => {
                        let skip = Label::consumer(SymbolSet::singleton(SymbolId::SKIP));
                        for (l, t) in &base.arcs {
                            if l.is_content() && t != d {
                                arcs.push((skip, t.clone()));
                            }
                        }
                    }
                    EnrichKind::Repeats => {
                        let repeat = Label::consumer(SymbolSet::singleton(SymbolId::REPEAT));
                        let preds = inner.predecessors(d).expect("checked when the layer was built");
                        for (l, p) in preds {
                            if l.is_content() {
                                arcs.push((repeat, p));
                            }
                        }
                    }
                }
                Expansion { is_final: base.is_final, arcs }
            }
            Rule::Intersect { a, b } => {
                let Descriptor::Pair(pair) = d else { unreachable!("intersection got {d:?}") };
                let (ea, eb) = (a.expand(&pair.0), b.expand(&pair.1));
                let mut arcs = Vec::new();
                for (la, ta) in &ea.arcs {
                    for (lb, tb) in &eb.arcs {
                        let symbols = la.symbols & lb.symbols;
                        if !symbols.is_empty() {
                            let label = Label::new(symbols, la.producer || lb.producer);
                            arcs.push((label, Descriptor::pair(ta.clone(), tb.clone())));
                        }
                    }
                }
                Expansion { is_final: ea.is_final && eb.is_final, arcs }
            }
            Rule::Close { inner } => {
                let e = inner.expand(d);
                Expansion { is_final: e.is_final, arcs: e.arcs.iter().filter(|(l, _)| l.producer).cloned().collect() }
            }
        }
    }

    /// Arcs into `d`, as `(label, source)`.
    pub fn predecessors(&self, d: &Descriptor) -> Result<Vec<(Label, Descriptor)>, Error> {
        let inv = &self.0.inventory;
        match &self.0.rule {
            Rule::Eager { fsa, reverse } => {
                let rev = reverse.get_or_init(|| {
                    let mut rev = vec![Vec::new(); fsa.num_states()];
                    for (p, l, q) in fsa.arcs() {
                        rev[q as usize].push((l, p));
                    }
                    rev
                });
                let Descriptor::State(q) = d else { unreachable!("eager leaf got {d:?}") };
                Ok(rev[*q as usize].iter().map(|(l, p)| (*l, Descriptor::State(*p))).collect())
            }
            Rule::Enrich { inner, kind } => {
                let mut preds = inner.predecessors(d)?;
                match kind {
                    EnrichKind::SelfLoops => preds.push((Label::consumer(inv.segments()), d.clone())),
                    EnrichKind::Skips => {
                        let skip = Label::consumer(SymbolSet::singleton(SymbolId::SKIP));
                        let extra: Vec<_> = preds
                            .iter()
                            .filter(|(l, p)| l.is_content() && p != d)
                            .map(|(_, p)| (skip, p.clone()))
                            .collect();
                        preds.extend(extra);
                    }
                    EnrichKind::Repeats => {
                        // q -c-> t yields t -repeat-> q, an arc into q from t
                        let repeat = Label::consumer(SymbolSet::singleton(SymbolId::REPEAT));
                        for (l, t) in &inner.expand(d).arcs {
                            if l.is_content() {
                                preds.push((repeat, t.clone()));
                            }
                        }
                    }
                }
                Ok(preds)
            }
            Rule::Intersect { .. } => Err(Error::NoReverse("intersection")),
            Rule::Close { .. } => Err(Error::NoReverse("closed interpretation")),
        }
    }

    pub fn metrics(&self) -> Vec<LayerMetrics> {
        let mut out = Vec::new();
        self.collect_metrics(&mut out);
        out
    }

    fn collect_metrics(&self, out: &mut Vec<LayerMetrics>) {
        let layer = match &self.0.rule {
            Rule::Eager { .. } => "eager",
            Rule::Enrich { kind: EnrichKind::Repeats, .. } => "repeats",
            Rule::Enrich { kind: EnrichKind::Skips, .. } => "skips",
            Rule::Enrich { kind: EnrichKind::SelfLoops, .. } => "self_loops",
            Rule::Intersect { .. } => "intersect",
            Rule::Close { .. } => "close",
        };
        out.push(LayerMetrics {
            layer,
            expanded: self.0.expanded.load(Ordering::Relaxed),
            cache_hits: self.0.hits.load(Ordering::Relaxed),
        });
        match &self.0.rule {
            Rule::Eager { .. } => {}
            Rule::Enrich { inner, .. } | Rule::Close { inner } => inner.collect_metrics(out),
            Rule::Intersect { a, b } => {
                a.collect_metrics(out);
                b.collect_metrics(out);
            }
        }
    }

    /// Descriptors expanded by all intersection layers: the product states this
    /// automaton has actually built so far.
    pub fn product_descriptors(&self) -> usize {
        self.metrics().iter().filter(|m| m.layer == "intersect").map(|m| m.expanded).sum()
    }

    /// Number of descriptors memoized at this layer.
    pub fn cached(&self) -> usize {
        self.0.cache.lock().unwrap_or_else(|e| e.into_inner()).len()
    }
}

/// Lazily apply one enrichment.
pub fn lazy_enrich(a: impl Into<LazyFsa>, kind: EnrichKind) -> Result<LazyFsa, Error> {
    let inner = a.into();
    if let Rule::Eager { fsa, .. } = &inner.0.rule {
        if let Some((from, to)) = fsa.has_epsilon_arc() {
            return Err(Error::EpsilonArc { from, to });
        }
    }
    if kind == EnrichKind::Repeats && !inner.supports_reverse() {
        return Err(Error::NoReverse("repeat enrichment needs arcs into each state"));
    }
    let inv = inner.inventory().clone();
    Ok(LazyFsa::new(Rule::Enrich { inner, kind }, inv))
}

/// All three enrichments, lazily, in canonical order.
pub fn lazy_enrich_all(a: impl Into<LazyFsa>) -> Result<LazyFsa, Error> {
    let loops = lazy_enrich(a, EnrichKind::SelfLoops)?;
    let skips = lazy_enrich(loops, EnrichKind::Skips)?;
    lazy_enrich(skips, EnrichKind::Repeats)
}

/// Open-interpretation intersection, one state pair at a time.
pub fn lazy_intersect(a: impl Into<LazyFsa>, b: impl Into<LazyFsa>) -> LazyFsa {
    let (a, b) = (a.into(), b.into());
    assert!(
        Arc::ptr_eq(a.inventory(), b.inventory()) || a.inventory() == b.inventory(),
        "operands use different inventories"
    );
    let inv = a.inventory().clone();
    LazyFsa::new(Rule::Intersect { a, b }, inv)
}

/// Closed interpretation as a filter: only producer arcs are ever followed.
pub fn lazy_close(a: impl Into<LazyFsa>) -> LazyFsa {
    let inner = a.into();
    let inv = inner.inventory().clone();
    LazyFsa::new(Rule::Close { inner }, inv)
}

/// Expand everything reachable from start. Fails once more than `budget`
/// descriptors have been discovered. The result is not trimmed.
pub fn materialize(l: &LazyFsa, budget: usize) -> Result<Fsa, Error> {
    let mut fsa = Fsa::new(l.inventory().clone());
    let mut ids: HashMap<Descriptor, StateId> = HashMap::new();
    let start = l.start();
    ids.insert(start.clone(), fsa.start());
    let mut queue = VecDeque::from([start]);
    while let Some(d) = queue.pop_front() {
        let here = ids[&d];
        let e = l.expand(&d);
        fsa.set_final(here, e.is_final);
        for (label, t) in &e.arcs {
            let target = match ids.get(t) {
                Some(&n) => n,
                None => {
                    if ids.len() >= budget {
                        return Err(Error::Budget { budget, discovered: ids.len() + 1 });
                    }
                    let n = fsa.add_state();
                    ids.insert(t.clone(), n);
                    queue.push_back(t.clone());
                    n
                }
            };
            fsa.add_arc(here, *label, target);
        }
    }
    Ok(fsa)
}

/// Default budget for [`materialize`].
pub const DEFAULT_BUDGET: usize = 5_000_000;
