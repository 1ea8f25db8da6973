//! Total quasiorders on tuple positions, the type/matrix decomposition of
//! tuples, and the special anti-lexicographic (sal) orders on tuples and
//! on subsets.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::order::{alex_set_cmp, normalize_subset, Chain};

/// An ordered partition of the positions `0..arity`. The order of
/// `classes` is the strict order between equivalence classes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TotalQuasiorder {
    arity: usize,
    classes: Vec<Vec<usize>>,
}

/// Which rule decided a comparison of total quasiorders.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriangleRule {
    Identical,
    /// Fewer classes comes first.
    ClassCount,
    /// The class sequences, each sorted by alex, differ.
    SortedClasses,
    /// The partitions coincide and the class sequences in their own order
    /// decide. This is the completion of the order beyond the sorted-class
    /// rule; results resting on it are flagged.
    OrderedClasses,
}

impl TotalQuasiorder {
    /// Builds a quasiorder from classes listed in increasing order.
    pub fn new(arity: usize, classes: Vec<Vec<usize>>) -> Result<Self> {
        if arity == 0 {
            return Err(Error::InvalidQuasiorder("arity must be at least 1".into()));
        }
        let mut seen = vec![false; arity];
        let mut normalized = Vec::with_capacity(classes.len());
        for class in classes {
            if class.is_empty() {
                return Err(Error::InvalidQuasiorder("empty class".into()));
            }
            let class = normalize_subset(&class);
            for &i in &class {
                if i >= arity {
                    return Err(Error::OutOfRange { value: i, size: arity });
                }
                if std::mem::replace(&mut seen[i], true) {
                    return Err(Error::InvalidQuasiorder(format!("position {} repeated", i + 1)));
                }
            }
            normalized.push(class);
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidQuasiorder(format!("position {} missing", i + 1)));
        }
        Ok(TotalQuasiorder { arity, classes: normalized })
    }

    /// Same as [`TotalQuasiorder::new`] with 1-based positions.
    pub fn from_one_based(arity: usize, classes: &[&[usize]]) -> Result<Self> {
        let mut cs = Vec::with_capacity(classes.len());
        for class in classes {
            let mut c = Vec::with_capacity(class.len());
            for &i in class.iter() {
                if i == 0 {
                    return Err(Error::OutOfRange { value: 0, size: arity });
                }
                c.push(i - 1);
            }
            cs.push(c);
        }
        TotalQuasiorder::new(arity, cs)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// The quasiorder with a single class.
    pub fn diagonal(arity: usize) -> Self {
        TotalQuasiorder { arity, classes: vec![(0..arity).collect()] }
    }

    /// The quasiorder of a strictly increasing tuple.
    pub fn increasing(arity: usize) -> Self {
        TotalQuasiorder { arity, classes: (0..arity).map(|i| vec![i]).collect() }
    }

    /// Whether `(i, j)` belongs to the relation, i.e. class(i) ⪯ class(j).
    pub fn relates(&self, i: usize, j: usize) -> bool {
        let ci = self.class_index(i);
        let cj = self.class_index(j);
        ci <= cj
    }

    fn class_index(&self, i: usize) -> usize {
        self.classes
            .iter()
            .position(|c| c.binary_search(&i).is_ok())
            .expect("position inside arity")
    }

    /// Compares two quasiorders and reports which rule decided.
    pub fn compare(&self, other: &Self) -> (Ordering, TriangleRule) {
        debug_assert_eq!(self.arity, other.arity);
        match self.classes.len().cmp(&other.classes.len()) {
            Ordering::Equal => {}
            ord => return (ord, TriangleRule::ClassCount),
        }
        let mut mine = self.classes.clone();
        let mut theirs = other.classes.clone();
        mine.sort_by(|a, b| alex_set_cmp(a, b));
        theirs.sort_by(|a, b| alex_set_cmp(a, b));
        match alex_seq_cmp(&mine, &theirs) {
            Ordering::Equal => {}
            ord => return (ord, TriangleRule::SortedClasses),
        }
        match alex_seq_cmp(&self.classes, &other.classes) {
            Ordering::Equal => (Ordering::Equal, TriangleRule::Identical),
            ord => (ord, TriangleRule::OrderedClasses),
        }
    }

    /// Every total quasiorder on `arity` positions, in increasing order.
    pub fn all(arity: usize) -> Vec<TotalQuasiorder> {
        let mut out = Vec::new();
        let mut labels = vec![0usize; arity];
        for k in 1..=arity {
            collect_surjections(&mut labels, 0, k, &mut |labels| {
                let mut classes = vec![Vec::new(); k];
                for (i, &c) in labels.iter().enumerate() {
                    classes[c].push(i);
                }
                out.push(TotalQuasiorder { arity, classes });
            });
        }
        out.sort();
        out
    }
}

fn collect_surjections(labels: &mut [usize], pos: usize, k: usize, emit: &mut dyn FnMut(&[usize])) {
    if pos == labels.len() {
        let mut hit = vec![false; k];
        for &c in labels.iter() {
            hit[c] = true;
        }
        if hit.iter().all(|&h| h) {
            emit(labels);
        }
        return;
    }
    for c in 0..k {
        labels[pos] = c;
        collect_surjections(labels, pos + 1, k, emit);
    }
}

/// Anti-lexicographic order on equal-length sequences of subsets, each
/// coordinate compared by alex.
fn alex_seq_cmp(a: &[Vec<usize>], b: &[Vec<usize>]) -> Ordering {
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        match alex_set_cmp(x, y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

impl Ord for TotalQuasiorder {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other).0
    }
}

impl PartialOrd for TotalQuasiorder {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Written with 1-based positions, e.g. `2<1,3<4`.
impl fmt::Display for TotalQuasiorder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (ci, class) in self.classes.iter().enumerate() {
            if ci > 0 {
                write!(f, "<")?;
            }
            for (k, i) in class.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", i + 1)?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for TotalQuasiorder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut classes = Vec::new();
        let mut max = 0;
        for part in s.split('<') {
            let mut class = Vec::new();
            for item in part.split(',') {
                let i: usize = item
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidQuasiorder(format!("bad position `{item}`")))?;
                if i == 0 {
                    return Err(Error::InvalidQuasiorder("positions are 1-based".into()));
                }
                max = max.max(i);
                class.push(i - 1);
            }
            classes.push(class);
        }
        TotalQuasiorder::new(max, classes)
    }
}

/// The type of a tuple: positions grouped by equal value, classes ordered
/// by increasing value.
pub fn tp(tuple: &[usize]) -> TotalQuasiorder {
    let values = normalize_subset(tuple);
    let mut classes = vec![Vec::new(); values.len()];
    for (i, x) in tuple.iter().enumerate() {
        let c = values.binary_search(x).expect("value present");
        classes[c].push(i);
    }
    TotalQuasiorder { arity: tuple.len(), classes }
}

/// The matrix of a tuple: its distinct values in increasing order.
pub fn mat(tuple: &[usize]) -> Vec<usize> {
    normalize_subset(tuple)
}

/// Puts `values[ξ]` on every position of the ξ-th class of `sigma`, for an
/// arbitrary tuple of values.
pub fn place(sigma: &TotalQuasiorder, values: &[usize]) -> Result<Vec<usize>> {
    if values.len() != sigma.class_count() {
        return Err(Error::LengthMismatch { expected: sigma.class_count(), actual: values.len() });
    }
    let mut out = vec![0; sigma.arity];
    for (class, &v) in sigma.classes.iter().zip(values) {
        for &i in class {
            out[i] = v;
        }
    }
    Ok(out)
}

/// Inverse of the type/matrix decomposition: `tup(tp(a), mat(a)) = a`.
/// `values` must be strictly increasing.
pub fn tup(sigma: &TotalQuasiorder, values: &[usize]) -> Result<Vec<usize>> {
    if values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::NotIncreasing(values.to_vec()));
    }
    place(sigma, values)
}

/// Checked comparison of total quasiorders.
pub fn cmp_triangle(sigma: &TotalQuasiorder, tau: &TotalQuasiorder) -> Result<Ordering> {
    if sigma.arity != tau.arity {
        return Err(Error::ArityMismatch { expected: sigma.arity, actual: tau.arity });
    }
    Ok(sigma.cmp(tau))
}

/// Sort key realizing the sal order on tuples of one length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SalKey {
    pub ty: TotalQuasiorder,
    pub values: Vec<usize>,
}

impl SalKey {
    pub fn of(tuple: &[usize]) -> Self {
        SalKey { ty: tp(tuple), values: mat(tuple) }
    }
}

impl Ord for SalKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ty
            .cmp(&other.ty)
            .then_with(|| alex_set_cmp(&self.values, &other.values))
    }
}

impl PartialOrd for SalKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Unchecked sal comparison of equal-length tuples.
pub fn sal_cmp(a: &[usize], b: &[usize]) -> Ordering {
    SalKey::of(a).cmp(&SalKey::of(b))
}

/// Checked sal comparison of tuples over `chain`.
pub fn cmp_sal_tuples(chain: Chain, a: &[usize], b: &[usize]) -> Result<Ordering> {
    if a.is_empty() {
        return Err(Error::EmptyTuple);
    }
    if a.len() != b.len() {
        return Err(Error::LengthMismatch { expected: a.len(), actual: b.len() });
    }
    chain.check_tuple(a)?;
    chain.check_tuple(b)?;
    Ok(sal_cmp(a, b))
}

/// Reports whether the comparison of `a` and `b` rests on the ordered-class
/// completion rather than the sorted-class rule.
pub fn sal_uses_completion(a: &[usize], b: &[usize]) -> bool {
    tp(a).compare(&tp(b)).1 == TriangleRule::OrderedClasses
}

/// Unchecked sal comparison of subsets in canonical (sorted, distinct)
/// form: the empty set, then singletons by element, then larger sets by
/// alex.
pub fn sal_edge_cmp(x: &[usize], y: &[usize]) -> Ordering {
    match (x.len(), y.len()) {
        (0, 0) => Ordering::Equal,
        (0, _) => Ordering::Less,
        (_, 0) => Ordering::Greater,
        (1, 1) => x[0].cmp(&y[0]),
        (1, _) => Ordering::Less,
        (_, 1) => Ordering::Greater,
        _ => alex_set_cmp(x, y),
    }
}

/// Checked sal comparison of subsets of `chain`.
pub fn cmp_sal_edges(chain: Chain, x: &[usize], y: &[usize]) -> Result<Ordering> {
    chain.check_tuple(x)?;
    chain.check_tuple(y)?;
    Ok(sal_edge_cmp(&normalize_subset(x), &normalize_subset(y)))
}
