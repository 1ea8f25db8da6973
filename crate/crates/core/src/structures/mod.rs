//! Finite relational structures, reflexive hypergraphs and metric spaces on
//! a canonical chain `0..n`, together with class validators and morphism
//! predicates.

mod enumerate;
mod morphism;
mod validate;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::order::{normalize_subset, Chain};
use crate::tuples::{sal_cmp, sal_edge_cmp};

pub use enumerate::{automorphisms, enum_morphisms};
pub use morphism::{check_morphism, induced_edge_map, induced_tuple_map, MorphismKind, Verdict};
pub use validate::{validate, ClassTag};

/// Tolerance for comparisons of real distances.
pub const METRIC_EPS: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Symbol {
    pub name: String,
    pub arity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Signature {
    symbols: Vec<Symbol>,
}

impl Signature {
    pub fn new(symbols: Vec<Symbol>) -> Result<Self> {
        let mut names = BTreeSet::new();
        for s in &symbols {
            if s.arity == 0 {
                return Err(Error::InvalidSignature(format!("symbol `{}` has arity 0", s.name)));
            }
            if s.name.is_empty() {
                return Err(Error::InvalidSignature("empty symbol name".into()));
            }
            if !names.insert(s.name.as_str()) {
                return Err(Error::InvalidSignature(format!("symbol `{}` repeated", s.name)));
            }
        }
        Ok(Signature { symbols })
    }

    /// A signature with one symbol.
    pub fn single(name: &str, arity: usize) -> Result<Self> {
        Signature::new(vec![Symbol { name: name.to_string(), arity }])
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s.name == name)
    }
}

/// A finite relational structure on `0..size`, ordered naturally.
///
/// Relations are kept in lexicographic order; a second copy in sal order,
/// with ranks, serves the rigidity checks.
#[derive(Debug, Clone)]
pub struct Structure {
    sig: Signature,
    size: usize,
    relations: Vec<BTreeSet<Vec<usize>>>,
    sal: Vec<Vec<Vec<usize>>>,
    rank: Vec<HashMap<Vec<usize>, usize>>,
}

impl PartialEq for Structure {
    fn eq(&self, other: &Self) -> bool {
        self.sig == other.sig && self.size == other.size && self.relations == other.relations
    }
}

impl Eq for Structure {}

impl Structure {
    pub fn new(sig: Signature, size: usize, relations: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptyChain);
        }
        if relations.len() != sig.len() {
            return Err(Error::LengthMismatch { expected: sig.len(), actual: relations.len() });
        }
        let chain = Chain::new(size)?;
        let mut sets = Vec::with_capacity(relations.len());
        for (symbol, tuples) in sig.symbols.iter().zip(relations) {
            let mut set = BTreeSet::new();
            for t in tuples {
                if t.len() != symbol.arity {
                    return Err(Error::ArityMismatch { expected: symbol.arity, actual: t.len() });
                }
                chain.check_tuple(&t)?;
                set.insert(t);
            }
            sets.push(set);
        }
        Ok(Structure::from_sets(sig, size, sets))
    }

    pub(crate) fn from_sets(sig: Signature, size: usize, relations: Vec<BTreeSet<Vec<usize>>>) -> Self {
        let sal: Vec<Vec<Vec<usize>>> = relations
            .iter()
            .map(|set| {
                let mut v: Vec<Vec<usize>> = set.iter().cloned().collect();
                v.sort_by(|a, b| sal_cmp(a, b));
                v
            })
            .collect();
        let rank = sal
            .iter()
            .map(|v| v.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect())
            .collect();
        Structure { sig, size, relations, sal, rank }
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn relation(&self, symbol: usize) -> &BTreeSet<Vec<usize>> {
        &self.relations[symbol]
    }

    pub fn relations(&self) -> &[BTreeSet<Vec<usize>>] {
        &self.relations
    }

    /// The tuples of a relation in increasing sal order.
    pub fn relation_sal(&self, symbol: usize) -> &[Vec<usize>] {
        &self.sal[symbol]
    }

    /// Position of `tuple` in the sal order of a relation.
    pub fn sal_rank(&self, symbol: usize, tuple: &[usize]) -> Option<usize> {
        self.rank[symbol].get(tuple).copied()
    }

    pub fn contains(&self, symbol: usize, tuple: &[usize]) -> bool {
        self.relations[symbol].contains(tuple)
    }

    /// The structure keeping only one symbol.
    pub fn reduct(&self, symbol: usize) -> Structure {
        let sig = Signature { symbols: vec![self.sig.symbols[symbol].clone()] };
        Structure::from_sets(sig, self.size, vec![self.relations[symbol].clone()])
    }

    /// The substructure induced on `vertices`, relabeled in increasing order.
    pub fn induced(&self, vertices: &[usize]) -> Result<Structure> {
        let vs = normalize_subset(vertices);
        if vs.is_empty() {
            return Err(Error::EmptyChain);
        }
        Chain::new(self.size)?.check_tuple(&vs)?;
        let mut label = vec![usize::MAX; self.size];
        for (i, &v) in vs.iter().enumerate() {
            label[v] = i;
        }
        let relations = self
            .relations
            .iter()
            .map(|set| {
                set.iter()
                    .filter(|t| t.iter().all(|&x| label[x] != usize::MAX))
                    .map(|t| t.iter().map(|&x| label[x]).collect())
                    .collect()
            })
            .collect();
        Ok(Structure::from_sets(self.sig.clone(), vs.len(), relations))
    }
}

/// A reflexive hypergraph on `0..size`: edges are sorted vertex lists.
#[derive(Debug, Clone)]
pub struct Hypergraph {
    size: usize,
    uniformity: usize,
    edges: BTreeSet<Vec<usize>>,
    sal: Vec<Vec<usize>>,
    rank: HashMap<Vec<usize>, usize>,
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.uniformity == other.uniformity && self.edges == other.edges
    }
}

impl Eq for Hypergraph {}

impl Hypergraph {
    /// Edges may be given in any vertex order. Class conditions (singletons
    /// present, edge sizes) are checked by [`validate`].
    pub fn new(size: usize, uniformity: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let chain = Chain::new(size)?;
        if uniformity < 2 {
            return Err(Error::InvalidObject("uniformity must be at least 2".into()));
        }
        let mut set = BTreeSet::new();
        for e in edges {
            if e.is_empty() {
                return Err(Error::InvalidObject("empty edge".into()));
            }
            chain.check_tuple(&e)?;
            let n = normalize_subset(&e);
            if n.len() != e.len() {
                return Err(Error::InvalidObject(format!("edge {} repeats a vertex", fmt_set(&e))));
            }
            set.insert(n);
        }
        Ok(Hypergraph::from_set(size, uniformity, set))
    }

    /// All singletons together with the given `r`-edges.
    pub fn reflexive(size: usize, uniformity: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let mut all: Vec<Vec<usize>> = (0..size).map(|v| vec![v]).collect();
        all.extend(edges);
        Hypergraph::new(size, uniformity, all)
    }

    pub(crate) fn from_set(size: usize, uniformity: usize, edges: BTreeSet<Vec<usize>>) -> Self {
        let mut sal: Vec<Vec<usize>> = edges.iter().cloned().collect();
        sal.sort_by(|a, b| sal_edge_cmp(a, b));
        let rank = sal.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        Hypergraph { size, uniformity, edges, sal, rank }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn uniformity(&self) -> usize {
        self.uniformity
    }

    pub fn edges(&self) -> &BTreeSet<Vec<usize>> {
        &self.edges
    }

    /// Edges in increasing sal order.
    pub fn edges_sal(&self) -> &[Vec<usize>] {
        &self.sal
    }

    pub fn sal_rank(&self, edge: &[usize]) -> Option<usize> {
        self.rank.get(edge).copied()
    }

    pub fn contains(&self, edge: &[usize]) -> bool {
        self.edges.contains(edge)
    }
}

/// A finite metric space on `0..size`, ordered naturally.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricSpace {
    size: usize,
    dist: Vec<Vec<f64>>,
}

impl MetricSpace {
    /// Checks shape only; the metric axioms are checked by [`validate`].
    pub fn new(dist: Vec<Vec<f64>>) -> Result<Self> {
        let size = dist.len();
        Chain::new(size)?;
        for row in &dist {
            if row.len() != size {
                return Err(Error::LengthMismatch { expected: size, actual: row.len() });
            }
            if row.iter().any(|d| !d.is_finite()) {
                return Err(Error::InvalidObject("distances must be finite".into()));
            }
        }
        Ok(MetricSpace { size, dist })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn dist(&self, x: usize, y: usize) -> f64 {
        self.dist[x][y]
    }

    pub fn matrix(&self) -> &[Vec<f64>] {
        &self.dist
    }

    /// The set of nonzero distances, increasing.
    pub fn spectrum(&self) -> Vec<f64> {
        let mut out: Vec<f64> = Vec::new();
        for x in 0..self.size {
            for y in x + 1..self.size {
                let d = self.dist[x][y];
                if !out.iter().any(|&e| (e - d).abs() <= METRIC_EPS) {
                    out.push(d);
                }
            }
        }
        out.sort_by(f64::total_cmp);
        out
    }
}

/// Any object a morphism can connect.
#[derive(Debug, Clone, PartialEq)]
pub enum Object {
    Chain(Chain),
    Structure(Structure),
    Hypergraph(Hypergraph),
    Metric(MetricSpace),
}

impl Object {
    pub fn size(&self) -> usize {
        match self {
            Object::Chain(c) => c.size(),
            Object::Structure(s) => s.size(),
            Object::Hypergraph(h) => h.size(),
            Object::Metric(m) => m.size(),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Object::Chain(_) => "chain",
            Object::Structure(_) => "structure",
            Object::Hypergraph(_) => "hypergraph",
            Object::Metric(_) => "metric",
        }
    }

    /// A string determining the object up to equality. Used as a cache key.
    pub fn canonical_key(&self) -> String {
        use std::fmt::Write;
        let mut s = String::new();
        match self {
            Object::Chain(c) => write!(s, "c{}", c.size()).unwrap(),
            Object::Structure(st) => {
                write!(s, "s{}", st.size()).unwrap();
                for (sym, rel) in st.sig.symbols.iter().zip(&st.relations) {
                    write!(s, "|{}:{}:{:?}", sym.name, sym.arity, rel).unwrap();
                }
            }
            Object::Hypergraph(h) => write!(s, "h{}:{}:{:?}", h.size, h.uniformity, h.edges).unwrap(),
            Object::Metric(m) => {
                write!(s, "m{}", m.size).unwrap();
                for row in &m.dist {
                    for d in row {
                        write!(s, ":{:x}", d.to_bits()).unwrap();
                    }
                }
            }
        }
        s
    }
}

impl From<Chain> for Object {
    fn from(c: Chain) -> Self {
        Object::Chain(c)
    }
}

impl From<Structure> for Object {
    fn from(s: Structure) -> Self {
        Object::Structure(s)
    }
}

impl From<Hypergraph> for Object {
    fn from(h: Hypergraph) -> Self {
        Object::Hypergraph(h)
    }
}

impl From<MetricSpace> for Object {
    fn from(m: MetricSpace) -> Self {
        Object::Metric(m)
    }
}

/// A failed class or morphism condition. `witness` holds 0-based tuples;
/// `message` is written with 1-based labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub clause: String,
    pub message: String,
    pub witness: Vec<Vec<usize>>,
}

impl Violation {
    pub(crate) fn new(clause: &str, message: String, witness: Vec<Vec<usize>>) -> Self {
        Violation { clause: clause.to_string(), message, witness }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.clause, self.message)
    }
}

/// `(1,2,2)` for the 0-based tuple `[0,1,1]`.
pub fn fmt_tuple(t: &[usize]) -> String {
    let inner: Vec<String> = t.iter().map(|x| (x + 1).to_string()).collect();
    format!("({})", inner.join(","))
}

/// `{1,3}` for the 0-based set `[0,2]`.
pub fn fmt_set(t: &[usize]) -> String {
    let inner: Vec<String> = t.iter().map(|x| (x + 1).to_string()).collect();
    format!("{{{}}}", inner.join(","))
}
