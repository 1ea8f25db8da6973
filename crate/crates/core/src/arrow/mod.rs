//! Dual Ramsey arrows `C → (B)^A_k`.
//!
//! The morphisms `C → A` are the vertices of a hypergraph with one edge
//! `{g∘w : g ∈ hom(B, A)}` per `w ∈ hom(C, B)`. The arrow holds iff that
//! hypergraph has no `k`-coloring without monochromatic edges.

mod solver;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

pub use solver::{is_k_colorable, is_proper, SolveOutcome, SolverOptions, MAX_COLORS};

use crate::constructions::{build_empty, build_metric_uniform, build_tensor};
use crate::error::{Error, Result};
use crate::order::{Chain, ChainMap};
use crate::structures::{enum_morphisms, MorphismKind, Object, Signature};

#[derive(Debug, Clone)]
pub struct ArrowProblem {
    pub c: Object,
    pub b: Object,
    pub a: Object,
    pub k: usize,
    pub kind: MorphismKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArrowVerdict {
    /// Every `k`-coloring leaves some edge monochromatic.
    Holds { nodes: u64 },
    /// `coloring[i]` colors the `i`-th morphism of `hom(C, A)`.
    /// `degenerate` marks an empty `hom(C, B)`.
    Fails { coloring: Vec<usize>, degenerate: bool },
}

impl ArrowVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, ArrowVerdict::Holds { .. })
    }

    pub fn coloring(&self) -> Option<&[usize]> {
        match self {
            ArrowVerdict::Fails { coloring, .. } => Some(coloring),
            ArrowVerdict::Holds { .. } => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ArrowReport {
    pub verdict: ArrowVerdict,
    /// `hom(C, A)` in enumeration order; colorings index into it.
    pub hom_ca: Arc<Vec<ChainMap>>,
    pub k: usize,
    pub hom_cb: usize,
    pub hom_ba: usize,
    /// Deduplicated composite sets, as sorted indices into `hom_ca`.
    pub edges: Vec<Vec<usize>>,
}

impl ArrowReport {
    /// For a failing verdict, whether the coloring leaves every composite
    /// set with two colors. A holding verdict is not rechecked here.
    pub fn recheck(&self) -> bool {
        match &self.verdict {
            ArrowVerdict::Fails { coloring, .. } => {
                coloring.len() == self.hom_ca.len()
                    && coloring.iter().all(|&c| c < self.k)
                    && is_proper(coloring, &self.edges)
            }
            ArrowVerdict::Holds { .. } => true,
        }
    }
}

type HomKey = (String, String, MorphismKind);

/// `hom(C, A)`, `|hom(C, B)|`, `|hom(B, A)|` and the composite sets.
pub type CompositeSets = (Arc<Vec<ChainMap>>, usize, usize, Vec<Vec<usize>>);

/// Hom-sets keyed by the canonical encodings of both objects and the kind.
#[derive(Debug, Default)]
pub struct HomCache {
    entries: Mutex<HashMap<HomKey, Arc<Vec<ChainMap>>>>,
}

impl HomCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn homs(&self, dom: &Object, cod: &Object, kind: MorphismKind) -> Result<Arc<Vec<ChainMap>>> {
        let key = (dom.canonical_key(), cod.canonical_key(), kind);
        if let Some(hit) = self.entries.lock().expect("cache lock").get(&key) {
            return Ok(hit.clone());
        }
        let homs = Arc::new(enum_morphisms(dom, cod, kind)?);
        self.entries.lock().expect("cache lock").insert(key, homs.clone());
        Ok(homs)
    }

    pub fn len(&self) -> usize {
        self.entries.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// The composite sets of the problem, without deciding colorability.
pub fn composite_sets(p: &ArrowProblem, cache: &HomCache) -> Result<CompositeSets> {
    let hom_ba = cache.homs(&p.b, &p.a, p.kind)?;
    if hom_ba.is_empty() {
        return Err(Error::IllPosed("hom(B, A) is empty".into()));
    }
    let hom_cb = cache.homs(&p.c, &p.b, p.kind)?;
    let hom_ca = cache.homs(&p.c, &p.a, p.kind)?;
    let index: HashMap<&[usize], usize> = hom_ca.iter().enumerate().map(|(i, f)| (f.images(), i)).collect();
    let mut edges = Vec::with_capacity(hom_cb.len());
    for w in hom_cb.iter() {
        let mut edge = Vec::with_capacity(hom_ba.len());
        for g in hom_ba.iter() {
            let gw = g.after(w)?;
            let i = *index
                .get(gw.images())
                .ok_or_else(|| Error::NotClosed(format!("{g} after {w} is not of class {}", p.kind)))?;
            edge.push(i);
        }
        edge.sort_unstable();
        edge.dedup();
        edges.push(edge);
    }
    edges.sort();
    edges.dedup();
    Ok((hom_ca, hom_cb.len(), hom_ba.len(), edges))
}

pub fn check_arrow(p: &ArrowProblem, opts: &SolverOptions, cache: &HomCache) -> Result<ArrowReport> {
    if p.k == 0 {
        return Err(Error::IllPosed("at least one color is required".into()));
    }
    let (hom_ca, hom_cb, hom_ba, edges) = composite_sets(p, cache)?;
    let verdict = if hom_cb == 0 {
        ArrowVerdict::Fails { coloring: vec![0; hom_ca.len()], degenerate: true }
    } else {
        let out = is_k_colorable(hom_ca.len(), &edges, p.k, opts)?;
        match out.coloring {
            Some(coloring) => ArrowVerdict::Fails { coloring, degenerate: false },
            None => ArrowVerdict::Holds { nodes: out.nodes },
        }
    };
    Ok(ArrowReport { verdict, hom_ca, k: p.k, hom_cb, hom_ba, edges })
}

/// Candidate objects `C`, indexed by size.
#[derive(Debug, Clone, PartialEq)]
pub enum Generator {
    Chains,
    /// Diagonal-only binary structures.
    EmptyReflexive,
    /// Structures over the signature with every relation empty.
    EmptyStructure(Signature),
    UniformMetric(f64),
    /// Tensor objects of width `r`, indexed by their number of levels.
    Tensor(usize),
}

impl Generator {
    pub fn object(&self, n: usize) -> Result<Object> {
        Ok(match self {
            Generator::Chains => Chain::new(n)?.into(),
            Generator::EmptyReflexive => build_empty(&Signature::default(), n, true)?.into(),
            Generator::EmptyStructure(sig) => build_empty(sig, n, false)?.into(),
            Generator::UniformMetric(delta) => build_metric_uniform(n, *delta)?.into(),
            Generator::Tensor(r) => build_tensor(*r, n)?.into(),
        })
    }
}

#[derive(Debug, Clone)]
pub enum SearchOutcome {
    Found { n: usize, object: Object, report: ArrowReport },
    Exhausted { bound: usize },
}

/// The first `n` in `1..=bound` whose generated object arrows `(B)^A_k`.
/// Indices whose object has no morphism to `B` fail degenerately and are
/// skipped.
#[allow(clippy::too_many_arguments)]
pub fn search_ramsey_object(
    b: &Object,
    a: &Object,
    k: usize,
    kind: MorphismKind,
    generator: &Generator,
    bound: usize,
    opts: &SolverOptions,
    cache: &HomCache,
) -> Result<SearchOutcome> {
    for n in 1..=bound {
        let c = generator.object(n)?;
        let problem = ArrowProblem { c: c.clone(), b: b.clone(), a: a.clone(), k, kind };
        let report = check_arrow(&problem, opts, cache)?;
        if report.verdict.holds() {
            return Ok(SearchOutcome::Found { n, object: c, report });
        }
    }
    Ok(SearchOutcome::Exhausted { bound })
}
