//! Reflexive tournaments, inflations, the critical-pair matrix argument
//! against a common inflation of the 3-cycle and the 3-cycle with a sink,
//! and the coloring showing the ordered tournaments have no Ramsey object
//! over the pinned pair `thm7-A`, `thm7-B`.

use std::fmt;

use rayon::prelude::*;

use crate::arrow::{check_arrow, is_proper, ArrowProblem, ArrowReport, HomCache, SolverOptions};
use crate::constructions::{build_named, reflexive_digraph, Named, C3_ARCS, C3_PLUS_ARCS, EDGE};
use crate::error::{Error, Result};
use crate::order::ChainMap;
use crate::structures::{check_morphism, validate, ClassTag, MorphismKind, Object, Signature, Structure};

/// A reflexive structure with one binary relation holding exactly one of
/// `x → y`, `y → x` for every `x ≠ y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tournament(Structure);

impl Tournament {
    pub fn new(s: Structure) -> Result<Self> {
        validate(&Object::Structure(s.clone()), ClassTag::Tournament)
            .map_err(|v| Error::InvalidObject(format!("not a tournament: {v}")))?;
        Ok(Tournament(s))
    }

    /// From 1-based arcs; loops are added.
    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        Tournament::new(reflexive_digraph(n, arcs)?)
    }

    /// `arrow(x, y)` for `x > y` is given by `beats[x][y]`: true means `x → y`.
    fn from_lower(beats: &[Vec<bool>]) -> Self {
        let n = beats.len();
        let mut tuples: Vec<Vec<usize>> = (0..n).map(|v| vec![v, v]).collect();
        for (x, row) in beats.iter().enumerate() {
            for (y, &b) in row.iter().enumerate() {
                tuples.push(if b { vec![x, y] } else { vec![y, x] });
            }
        }
        let s = Structure::new(Signature::single(EDGE, 2).expect("valid symbol"), n, vec![tuples])
            .expect("vertices in range");
        Tournament(s)
    }

    pub fn c3() -> Self {
        Tournament::from_arcs(3, &C3_ARCS).expect("valid tournament")
    }

    pub fn c3_plus() -> Self {
        Tournament::from_arcs(4, &C3_PLUS_ARCS).expect("valid tournament")
    }

    pub fn size(&self) -> usize {
        self.0.size()
    }

    pub fn arrow(&self, x: usize, y: usize) -> bool {
        self.0.contains(0, &[x, y])
    }

    pub fn structure(&self) -> &Structure {
        &self.0
    }

    pub fn into_structure(self) -> Structure {
        self.0
    }

    pub fn induced(&self, vertices: &[usize]) -> Result<Tournament> {
        Ok(Tournament(self.0.induced(vertices)?))
    }

    /// Replaces vertex `x` by `parts[x]` consecutive vertices, ordered
    /// transitively among themselves and inheriting the arcs of `x`.
    pub fn blow_up(&self, parts: &[usize]) -> Result<Tournament> {
        if parts.len() != self.size() {
            return Err(Error::LengthMismatch { expected: self.size(), actual: parts.len() });
        }
        if parts.contains(&0) {
            return Err(Error::InvalidObject("every part must be nonempty".into()));
        }
        let owner: Vec<usize> = parts.iter().enumerate().flat_map(|(x, &p)| std::iter::repeat_n(x, p)).collect();
        let beats = (0..owner.len())
            .map(|x| (0..x).map(|y| if owner[x] == owner[y] { false } else { self.arrow(owner[x], owner[y]) }).collect())
            .collect::<Vec<Vec<bool>>>();
        Ok(Tournament::from_lower(&beats))
    }
}

impl From<Tournament> for Object {
    fn from(t: Tournament) -> Self {
        Object::Structure(t.0)
    }
}

/// A homomorphism `t → s` (order ignored), surjective if asked, first in
/// lexicographic order of the image array.
pub fn find_homomorphism(t: &Tournament, s: &Tournament, surjective: bool) -> Option<ChainMap> {
    fn go(t: &Tournament, s: &Tournament, surjective: bool, images: &mut Vec<usize>, hits: &mut [usize], distinct: usize) -> bool {
        let v = images.len();
        if v == t.size() {
            return !surjective || distinct == s.size();
        }
        for y in 0..s.size() {
            let fresh = usize::from(hits[y] == 0);
            if surjective && s.size() - (distinct + fresh) > t.size() - v - 1 {
                continue;
            }
            let ok = (0..v).all(|u| {
                let (iu, iv) = (images[u], y);
                (!t.arrow(u, v) || s.arrow(iu, iv)) && (!t.arrow(v, u) || s.arrow(iv, iu))
            });
            if !ok {
                continue;
            }
            images.push(y);
            hits[y] += 1;
            if go(t, s, surjective, images, hits, distinct + fresh) {
                return true;
            }
            hits[y] -= 1;
            images.pop();
        }
        false
    }
    let mut images = Vec::with_capacity(t.size());
    let mut hits = vec![0; s.size()];
    go(t, s, surjective, &mut images, &mut hits, 0)
        .then(|| ChainMap::new(s.size(), images).expect("images in range"))
}

/// A surjective homomorphism `t → s` if `t` inflates `s`.
pub fn is_inflation_of(t: &Tournament, s: &Tournament) -> Option<ChainMap> {
    find_homomorphism(t, s, true)
}

/// Cells `(i, j)` and `(u, v)`, 0-based, with `i → u` in the first
/// tournament and `v → j` in the second, `i ≠ u` and `v ≠ j`. A common
/// inflation cannot meet both cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CriticalPair {
    pub i: usize,
    pub j: usize,
    pub u: usize,
    pub v: usize,
}

impl CriticalPair {
    /// The two cells with the smaller first.
    pub fn cells(&self) -> [(usize, usize); 2] {
        let (a, b) = ((self.i, self.j), (self.u, self.v));
        if a <= b {
            [a, b]
        } else {
            [b, a]
        }
    }
}

impl fmt::Display for CriticalPair {
    /// 1-based, smaller cell first, as `(11,23)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b] = self.cells();
        write!(f, "({}{},{}{})", a.0 + 1, a.1 + 1, b.0 + 1, b.1 + 1)
    }
}

/// All critical pairs, sorted by their cells.
pub fn critical_pairs(s: &Tournament, s2: &Tournament) -> Vec<CriticalPair> {
    let mut out = Vec::new();
    for i in 0..s.size() {
        for u in (0..s.size()).filter(|&u| u != i && s.arrow(i, u)) {
            for j in 0..s2.size() {
                for v in (0..s2.size()).filter(|&v| v != j && s2.arrow(v, j)) {
                    out.push(CriticalPair { i, j, u, v });
                }
            }
        }
    }
    out.sort_by_key(|p| p.cells());
    out
}

/// Matrices are row-major bitmasks: bit `i * cols + j` is entry `(i, j)`.
pub const MAX_CELLS: usize = 30;

/// Every 0/1 matrix with a 1 in each row and each column that avoids
/// putting 1 in both cells of any pair, in increasing bitmask order.
pub fn matrix_scan(pairs: &[CriticalPair], rows: usize, cols: usize) -> Result<Vec<u64>> {
    let cells = rows * cols;
    if cells > MAX_CELLS {
        return Err(Error::Budget(format!("{rows}x{cols} matrices exceed {MAX_CELLS} cells")));
    }
    let bit = |(i, j): (usize, usize)| -> Result<u64> {
        if i >= rows || j >= cols {
            return Err(Error::OutOfRange { value: i.max(j), size: rows.max(cols) });
        }
        Ok(1u64 << (i * cols + j))
    };
    let forbidden: Vec<u64> = pairs
        .iter()
        .map(|p| Ok(bit((p.i, p.j))? | bit((p.u, p.v))?))
        .collect::<Result<_>>()?;
    let row_masks: Vec<u64> = (0..rows).map(|i| ((1u64 << cols) - 1) << (i * cols)).collect();
    let col_masks: Vec<u64> = (0..cols).map(|j| (0..rows).fold(0, |m, i| m | 1u64 << (i * cols + j))).collect();
    let ok = |m: u64| {
        row_masks.iter().all(|&r| m & r != 0)
            && col_masks.iter().all(|&c| m & c != 0)
            && forbidden.iter().all(|&f| m & f != f)
    };
    Ok((0..1u64 << cells).into_par_iter().filter(|&m| ok(m)).collect())
}

/// Entry `(i, j)` of a scanned matrix.
pub fn matrix_entry(mask: u64, cols: usize, i: usize, j: usize) -> u8 {
    ((mask >> (i * cols + j)) & 1) as u8
}

/// A common inflation of `s1` and `s2` on at most `max_n` vertices, found
/// by extending labeled tournaments one vertex at a time. A partial
/// tournament is dropped once it has no homomorphism to one of them.
pub fn siblings_witness_search(s1: &Tournament, s2: &Tournament, max_n: usize) -> Option<Tournament> {
    fn extend(beats: &mut Vec<Vec<bool>>, n: usize, s1: &Tournament, s2: &Tournament) -> Option<Tournament> {
        if !beats.is_empty() {
            let t = Tournament::from_lower(beats);
            if beats.len() == n {
                return (is_inflation_of(&t, s1).is_some() && is_inflation_of(&t, s2).is_some()).then_some(t);
            }
            if find_homomorphism(&t, s1, false).is_none() || find_homomorphism(&t, s2, false).is_none() {
                return None;
            }
        }
        let m = beats.len();
        for code in 0..1u64 << m {
            beats.push((0..m).map(|y| code >> y & 1 == 1).collect());
            let found = extend(beats, n, s1, s2);
            beats.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }
    let lo = s1.size().max(s2.size());
    (lo..=max_n).find_map(|n| extend(&mut Vec::new(), n, s1, s2))
}

pub const PINNED_COMPLETION: &str = "thm7-B: vertices 1..7; 1->2, 2->3, 3->1 and 1,2,3->4; \
every vertex of 1..4 beats every vertex of 5..7; 5->6, 6->7, 5->7. thm7-A: 1->2.";

#[derive(Debug, Clone)]
pub struct CompositeRow {
    pub w: ChainMap,
    /// χ of `φ∘w` and of `ψ∘w`, in colors 1 and 2.
    pub chi_phi: u8,
    pub chi_psi: u8,
}

#[derive(Debug, Clone)]
pub struct CounterexampleReport {
    pub completion: &'static str,
    pub phi: ChainMap,
    pub psi: ChainMap,
    pub hom_ta: Vec<ChainMap>,
    /// χ on `hom_ta`, in colors 1 and 2.
    pub chi: Vec<u8>,
    pub rows: Vec<CompositeRow>,
    /// Every row has `χ(φ∘w) = 1` and `χ(ψ∘w) = 2`.
    pub all_split: bool,
    /// χ leaves every composite set of the arrow instance two-colored.
    pub chi_is_witness: bool,
    pub arrow: ArrowReport,
}

impl CounterexampleReport {
    pub fn degenerate(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn confirmed(&self) -> bool {
        self.all_split && self.chi_is_witness && !self.arrow.verdict.holds()
    }
}

/// Colors `f ∈ hom(T, A)` by 1 when the preimage of the first vertex
/// induces an inflation of the 3-cycle, else 2.
pub fn chi(t: &Tournament, f: &ChainMap) -> Result<u8> {
    let low: Vec<usize> = (0..t.size()).filter(|&x| f.apply(x) == 0).collect();
    if low.is_empty() {
        return Ok(2);
    }
    let sub = t.induced(&low)?;
    Ok(if is_inflation_of(&sub, &Tournament::c3()).is_some() { 1 } else { 2 })
}

/// Checks χ against every `w ∈ hom(T, B)` and runs the arrow checker on
/// `(T, B, A, 2)`. Fails with a budget error when `hom(T, A)` exceeds
/// `max_homs`.
pub fn verify_tournament_counterexample(
    t: &Tournament,
    max_homs: usize,
    opts: &SolverOptions,
    cache: &HomCache,
) -> Result<CounterexampleReport> {
    let kind = MorphismKind::RigidSurjectiveHomomorphism;
    let a: Object = build_named(Named::Thm7A)?.into();
    let b: Object = build_named(Named::Thm7B)?.into();
    let tt: Object = t.clone().into();
    let phi = ChainMap::from_one_based(2, &[1, 1, 1, 2, 2, 2, 2])?;
    let psi = ChainMap::from_one_based(2, &[1, 1, 1, 1, 2, 2, 2])?;
    for g in [&phi, &psi] {
        if let Some(v) = check_morphism(&b, &a, g, kind)?.violation() {
            return Err(Error::NotHomomorphism(format!("{g}: {v}")));
        }
    }
    let hom_ta = cache.homs(&tt, &a, kind)?;
    if hom_ta.len() > max_homs {
        return Err(Error::Budget(format!("hom(T, A) has {} maps, above {max_homs}", hom_ta.len())));
    }
    let chi_values = hom_ta.iter().map(|f| chi(t, f)).collect::<Result<Vec<u8>>>()?;
    let index = |f: &ChainMap| hom_ta.iter().position(|h| h == f).ok_or_else(|| Error::NotClosed(format!("{f}")));
    let hom_tb = cache.homs(&tt, &b, kind)?;
    let mut rows = Vec::with_capacity(hom_tb.len());
    for w in hom_tb.iter() {
        let chi_phi = chi_values[index(&phi.after(w)?)?];
        let chi_psi = chi_values[index(&psi.after(w)?)?];
        rows.push(CompositeRow { w: w.clone(), chi_phi, chi_psi });
    }
    let all_split = rows.iter().all(|r| r.chi_phi == 1 && r.chi_psi == 2);
    let problem = ArrowProblem { c: tt, b, a, k: 2, kind };
    let arrow = check_arrow(&problem, opts, cache)?;
    let zero_based: Vec<usize> = chi_values.iter().map(|&c| usize::from(c - 1)).collect();
    let chi_is_witness = is_proper(&zero_based, &arrow.edges);
    Ok(CounterexampleReport {
        completion: PINNED_COMPLETION,
        phi,
        psi,
        hom_ta: hom_ta.to_vec(),
        chi: chi_values,
        rows,
        all_split,
        chi_is_witness,
        arrow,
    })
}
