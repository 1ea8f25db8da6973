//! Named objects, uniform spaces, tensor objects, the two functor pairs, the
//! pre-adjunction maps and cone gluing.

mod functors;
mod glue;
mod preadjoint;

use std::collections::BTreeSet;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::structures::{Hypergraph, MetricSpace, Signature, Structure};

pub use functors::{dagger, erst_to_hypergraph, graph_to_hypergraph, hypergraph_to_erst, star, x_theta_signature};
pub use glue::{glue_cone, Glued};
pub use preadjoint::{induced_sal_map, preadjoint_phi};

/// Symbol used by every single-relation construction.
pub const RHO: &str = "rho";
/// Symbol used by graphs and tournaments.
pub const EDGE: &str = "edge";

/// `E_n` (one binary symbol, diagonal only) when `binary_only`, else `F_n`
/// over `sig` with every relation empty.
pub fn build_empty(sig: &Signature, n: usize, binary_only: bool) -> Result<Structure> {
    if binary_only {
        let diag = (0..n).map(|v| vec![v, v]).collect();
        Structure::new(Signature::single(RHO, 2)?, n, vec![diag])
    } else {
        Structure::new(sig.clone(), n, vec![Vec::new(); sig.len()])
    }
}

/// The space on `n` points with every nonzero distance equal to `delta`.
pub fn build_metric_uniform(n: usize, delta: f64) -> Result<MetricSpace> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::InvalidObject(format!("distance {delta} must be positive")));
    }
    let dist = (0..n)
        .map(|x| (0..n).map(|y| if x == y { 0.0 } else { delta }).collect())
        .collect();
    MetricSpace::new(dist)
}

/// Vertex `i` of level `l` (both 0-based) in a tensor object of width `r`.
pub fn tensor_vertex(r: usize, i: usize, level: usize) -> usize {
    level * r + i
}

fn check_tensor(r: usize, levels: usize) -> Result<()> {
    if r < 2 {
        return Err(Error::InvalidObject("tensor width must be at least 2".into()));
    }
    if levels == 0 {
        return Err(Error::EmptyChain);
    }
    Ok(())
}

/// The r-erst on `r·levels` vertices relating each level increasingly.
pub fn build_tensor(r: usize, levels: usize) -> Result<Structure> {
    check_tensor(r, levels)?;
    let n = r * levels;
    let mut tuples: Vec<Vec<usize>> = (0..n).map(|v| vec![v; r]).collect();
    tuples.extend((0..levels).map(|l| (0..r).map(|i| tensor_vertex(r, i, l)).collect()));
    Structure::new(Signature::single(RHO, r)?, n, vec![tuples])
}

/// The reflexive r-uniform hypergraph with one edge per level.
pub fn build_boxtensor(r: usize, levels: usize) -> Result<Hypergraph> {
    check_tensor(r, levels)?;
    let edges = (0..levels).map(|l| (0..r).map(|i| tensor_vertex(r, i, l)).collect()).collect();
    Hypergraph::reflexive(r * levels, r, edges)
}

/// Objects available by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Named {
    Cycle3,
    Cycle4,
    TournamentC3,
    TournamentC3Plus,
    Thm7A,
    Thm7B,
}

impl Named {
    pub const ALL: [Named; 6] =
        [Named::Cycle3, Named::Cycle4, Named::TournamentC3, Named::TournamentC3Plus, Named::Thm7A, Named::Thm7B];

    pub fn as_str(&self) -> &'static str {
        match self {
            Named::Cycle3 => "cycle3",
            Named::Cycle4 => "cycle4",
            Named::TournamentC3 => "tournament-c3",
            Named::TournamentC3Plus => "tournament-c3plus",
            Named::Thm7A => "thm7-A",
            Named::Thm7B => "thm7-B",
        }
    }
}

impl FromStr for Named {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Named::ALL
            .iter()
            .copied()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

/// A reflexive binary structure from 1-based arcs.
pub fn reflexive_digraph(n: usize, arcs: &[(usize, usize)]) -> Result<Structure> {
    let mut tuples: BTreeSet<Vec<usize>> = (0..n).map(|v| vec![v, v]).collect();
    for &(x, y) in arcs {
        if x == 0 || y == 0 {
            return Err(Error::OutOfRange { value: 0, size: n });
        }
        tuples.insert(vec![x - 1, y - 1]);
    }
    Structure::new(Signature::single(EDGE, 2)?, n, vec![tuples.into_iter().collect()])
}

fn symmetric(n: usize, edges: &[(usize, usize)]) -> Result<Structure> {
    let arcs: Vec<(usize, usize)> = edges.iter().flat_map(|&(x, y)| [(x, y), (y, x)]).collect();
    reflexive_digraph(n, &arcs)
}

/// Arcs of the 3-cycle tournament, 1-based.
pub const C3_ARCS: [(usize, usize); 3] = [(1, 2), (2, 3), (3, 1)];
/// Arcs of the 3-cycle with a common sink, 1-based.
pub const C3_PLUS_ARCS: [(usize, usize); 6] = [(1, 2), (2, 3), (3, 1), (1, 4), (2, 4), (3, 4)];

pub fn build_named(name: Named) -> Result<Structure> {
    match name {
        Named::Cycle3 => symmetric(3, &[(1, 2), (2, 3), (3, 1)]),
        Named::Cycle4 => symmetric(4, &[(1, 2), (2, 3), (3, 4), (1, 4)]),
        Named::TournamentC3 => reflexive_digraph(3, &C3_ARCS),
        Named::TournamentC3Plus => reflexive_digraph(4, &C3_PLUS_ARCS),
        Named::Thm7A => reflexive_digraph(2, &[(1, 2)]),
        Named::Thm7B => {
            let mut arcs = C3_PLUS_ARCS.to_vec();
            for x in 1..=4 {
                for y in 5..=7 {
                    arcs.push((x, y));
                }
            }
            arcs.extend([(5, 6), (6, 7), (5, 7)]);
            reflexive_digraph(7, &arcs)
        }
    }
}
