//! Finite chains, maps between them, rigid surjections and the two
//! anti-lexicographic orders.
//!
//! Every chain is canonically `0..n` with the natural order; documents and
//! display use the labels `1..=n`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A finite linear order on `0..size`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain {
    size: usize,
}

impl Chain {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptyChain);
        }
        Ok(Chain { size })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Checks that every entry of `tuple` lies in the chain.
    pub fn check_tuple(&self, tuple: &[usize]) -> Result<()> {
        match tuple.iter().find(|&&x| x >= self.size) {
            Some(&value) => Err(Error::OutOfRange { value, size: self.size }),
            None => Ok(()),
        }
    }
}

/// A total map between two finite chains. `images[i]` is the image of `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChainMap {
    cod: usize,
    images: Vec<usize>,
}

impl ChainMap {
    pub fn new(cod: usize, images: Vec<usize>) -> Result<Self> {
        if let Some(&value) = images.iter().find(|&&x| x >= cod) {
            return Err(Error::OutOfRange { value, size: cod });
        }
        Ok(ChainMap { cod, images })
    }

    /// Builds a map from 1-based images, as written in documents.
    pub fn from_one_based(cod: usize, images: &[usize]) -> Result<Self> {
        let mut out = Vec::with_capacity(images.len());
        for &x in images {
            if x == 0 || x > cod {
                return Err(Error::OutOfRange { value: x, size: cod });
            }
            out.push(x - 1);
        }
        Ok(ChainMap { cod, images: out })
    }

    pub fn identity(n: usize) -> Self {
        ChainMap { cod: n, images: (0..n).collect() }
    }

    pub fn constant(dom: usize, cod: usize, value: usize) -> Result<Self> {
        ChainMap::new(cod, vec![value; dom])
    }

    pub fn dom(&self) -> usize {
        self.images.len()
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.images.iter().map(|x| x + 1).collect()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// Image of a tuple under the induced coordinatewise map.
    pub fn apply_tuple(&self, tuple: &[usize]) -> Vec<usize> {
        tuple.iter().map(|&x| self.images[x]).collect()
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn after(&self, inner: &ChainMap) -> Result<ChainMap> {
        if inner.cod != self.dom() {
            return Err(Error::LengthMismatch { expected: self.dom(), actual: inner.cod });
        }
        Ok(ChainMap {
            cod: self.cod,
            images: inner.images.iter().map(|&x| self.images[x]).collect(),
        })
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.cod];
        for &y in &self.images {
            hit[y] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.cod];
        for &y in &self.images {
            if std::mem::replace(&mut hit[y], true) {
                return false;
            }
        }
        true
    }

    /// Least preimage of every codomain element, `None` where unhit.
    pub fn min_preimages(&self) -> Vec<Option<usize>> {
        let mut mins = vec![None; self.cod];
        for (x, &y) in self.images.iter().enumerate() {
            if mins[y].is_none() {
                mins[y] = Some(x);
            }
        }
        mins
    }

    /// The inverse map, when this map is a bijection.
    pub fn inverse(&self) -> Option<ChainMap> {
        if self.dom() != self.cod || !self.is_injective() {
            return None;
        }
        let mut inv = vec![0; self.cod];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        Some(ChainMap { cod: self.dom(), images: inv })
    }
}

impl fmt::Display for ChainMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", x + 1)?;
        }
        write!(f, ")")
    }
}

/// Anti-lexicographic comparison of equal-length tuples: the largest
/// differing coordinate decides. No validation.
pub fn alex_cmp(a: &[usize], b: &[usize]) -> Ordering {
    debug_assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

/// Anti-lexicographic order on tuples over `chain`.
pub fn cmp_alex_tuples(chain: Chain, a: &[usize], b: &[usize]) -> Result<Ordering> {
    if a.is_empty() {
        return Err(Error::EmptyTuple);
    }
    if a.len() != b.len() {
        return Err(Error::LengthMismatch { expected: a.len(), actual: b.len() });
    }
    chain.check_tuple(a)?;
    chain.check_tuple(b)?;
    Ok(alex_cmp(a, b))
}

/// Anti-lexicographic order on subsets given as strictly increasing
/// element lists: the larger set is the one owning the maximum of the
/// symmetric difference. No validation.
pub fn alex_set_cmp(x: &[usize], y: &[usize]) -> Ordering {
    let mut i = x.len();
    let mut j = y.len();
    while i > 0 && j > 0 {
        match x[i - 1].cmp(&y[j - 1]) {
            Ordering::Equal => {
                i -= 1;
                j -= 1;
            }
            other => return other,
        }
    }
    match (i, j) {
        (0, 0) => Ordering::Equal,
        (0, _) => Ordering::Less,
        _ => Ordering::Greater,
    }
}

/// Sorts and deduplicates an element list into canonical subset form.
pub fn normalize_subset(xs: &[usize]) -> Vec<usize> {
    let mut v = xs.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

/// Anti-lexicographic order on subsets of `chain`, via characteristic
/// vectors. Inputs may be in any order and may repeat elements.
pub fn cmp_alex_subsets(chain: Chain, x: &[usize], y: &[usize]) -> Result<Ordering> {
    chain.check_tuple(x)?;
    chain.check_tuple(y)?;
    Ok(alex_set_cmp(&normalize_subset(x), &normalize_subset(y)))
}

/// Restricted-growth scan: a map is a rigid surjection iff every new image
/// is exactly one past the largest image seen so far and the scan ends at
/// the top of the codomain. Returns the first offending position, if any.
pub(crate) fn rigid_scan(images: &[usize], cod: usize) -> RigidScan {
    let mut seen = 0usize;
    for (x, &y) in images.iter().enumerate() {
        if y == seen {
            seen += 1;
        } else if y > seen {
            return RigidScan::Jump { position: x, expected: seen, found: y };
        }
    }
    if seen == cod {
        RigidScan::Rigid
    } else {
        RigidScan::Short { reached: seen }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum RigidScan {
    Rigid,
    /// `found` first appears at `position` before `expected` has appeared.
    Jump { position: usize, expected: usize, found: usize },
    /// The initial segment `0..reached` was all that got covered.
    Short { reached: usize },
}

/// Whether `f` is a rigid surjection: surjective, with least preimages
/// strictly increasing along the codomain.
pub fn is_rigid_surjection(f: &ChainMap) -> bool {
    rigid_scan(&f.images, f.cod) == RigidScan::Rigid
}

/// All rigid surjections `[n] → [k]`, in lexicographic order of the image
/// arrays.
pub fn enum_rigid_surjections(n: usize, k: usize) -> Vec<ChainMap> {
    let mut out = Vec::new();
    if n == 0 || k == 0 || k > n {
        return out;
    }
    let mut images = vec![0usize; n];
    fill_rigid(&mut images, 1, 1, k, &mut out);
    out
}

fn fill_rigid(images: &mut [usize], pos: usize, seen: usize, k: usize, out: &mut Vec<ChainMap>) {
    let n = images.len();
    if pos == n {
        if seen == k {
            out.push(ChainMap { cod: k, images: images.to_vec() });
        }
        return;
    }
    // remaining positions must still be able to reach k
    let remaining = n - pos;
    let top = seen.min(k - 1);
    for y in 0..=top {
        let next_seen = if y == seen { seen + 1 } else { seen };
        if k - next_seen > remaining - 1 {
            continue;
        }
        images[pos] = y;
        fill_rigid(images, pos + 1, next_seen, k, out);
    }
}
