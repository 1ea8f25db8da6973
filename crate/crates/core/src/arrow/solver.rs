//! Proper hypergraph coloring by backtracking.
//!
//! A coloring is proper when no edge is monochromatic. Domains are color
//! bitmasks; an edge whose colored vertices all share one color and which
//! has a single uncolored vertex removes that color from the vertex. Colors
//! are interchangeable, so a vertex may only open the next unused color.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};

pub const MAX_COLORS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverOptions {
    /// Seeds the tie-break order among equally constrained vertices.
    pub seed: u64,
    /// 0 or 1 runs sequentially.
    pub workers: usize,
    /// Search nodes allowed before giving up with a budget error.
    pub max_nodes: Option<u64>,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { seed: 0, workers: 1, max_nodes: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    /// A proper coloring, or `None` if none exists.
    pub coloring: Option<Vec<usize>>,
    pub nodes: u64,
    pub subproblems: usize,
}

/// Searches for a coloring of `0..n` with `k` colors leaving no edge
/// monochromatic. Edges must lie inside `0..n`.
pub fn is_k_colorable(n: usize, edges: &[Vec<usize>], k: usize, opts: &SolverOptions) -> Result<SolveOutcome> {
    let mut edges: Vec<Vec<usize>> = edges
        .iter()
        .map(|e| {
            let mut e = e.clone();
            e.sort_unstable();
            e.dedup();
            e
        })
        .collect();
    if let Some(&v) = edges.iter().flatten().find(|&&v| v >= n) {
        return Err(Error::OutOfRange { value: v, size: n });
    }
    edges.sort();
    edges.dedup();
    let trivial = |coloring| SolveOutcome { coloring, nodes: 0, subproblems: 0 };
    // an edge with fewer than two vertices is monochromatic under any coloring
    if edges.iter().any(|e| e.len() < 2) || (k == 0 && n > 0) {
        return Ok(trivial(None));
    }
    if edges.is_empty() || n == 0 {
        return Ok(trivial(Some(vec![0; n])));
    }
    if k >= n {
        return Ok(trivial(Some((0..n).collect())));
    }
    if k > MAX_COLORS {
        return Err(Error::Budget(format!("at most {MAX_COLORS} colors are supported")));
    }
    let problem = Problem::new(n, edges, k, opts.seed);
    let nodes = AtomicU64::new(0);
    let shared = Shared { nodes: &nodes, limit: opts.max_nodes, best: AtomicUsize::new(usize::MAX) };
    let workers = opts.workers.max(1);
    let mut root = State::new(&problem);
    let (coloring, subproblems) = if workers == 1 {
        (root.search(&problem, &shared, usize::MAX)?, 1)
    } else {
        let prefixes = root.split(&problem, workers * 16);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::Budget(format!("thread pool: {e}")))?;
        let count = prefixes.len();
        let found = pool.install(|| {
            prefixes.par_iter().enumerate().find_map_first(|(idx, prefix)| {
                let mut st = State::new(&problem);
                for &(v, c) in prefix {
                    st.max_used = Some(st.max_used.map_or(c, |m| m.max(c)));
                    let ok = st.assign(&problem, v, c);
                    debug_assert!(ok, "prefixes replay without conflict");
                }
                match st.search(&problem, &shared, idx) {
                    Ok(Some(col)) => {
                        shared.best.fetch_min(idx, Ordering::SeqCst);
                        Some(Ok(col))
                    }
                    Ok(None) => None,
                    Err(e) => Some(Err(e)),
                }
            })
        });
        (found.transpose()?, count)
    };
    Ok(SolveOutcome { coloring, nodes: nodes.load(Ordering::Relaxed), subproblems })
}

struct Problem {
    n: usize,
    k: usize,
    edges: Vec<Vec<usize>>,
    incident: Vec<Vec<usize>>,
    /// Seeded rank used to break ties between equally good vertices.
    rank: Vec<usize>,
}

impl Problem {
    fn new(n: usize, edges: Vec<Vec<usize>>, k: usize, seed: u64) -> Self {
        let mut incident = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            for &v in e {
                incident[v].push(i);
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        if seed != 0 {
            order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        }
        let mut rank = vec![0; n];
        for (r, &v) in order.iter().enumerate() {
            rank[v] = r;
        }
        Problem { n, k, edges, incident, rank }
    }
}

struct Shared<'a> {
    nodes: &'a AtomicU64,
    limit: Option<u64>,
    /// Index of the earliest subproblem known to succeed.
    best: AtomicUsize,
}

enum Undo {
    Domain(usize, u64),
    Color(usize, usize),
}

struct State {
    color: Vec<Option<usize>>,
    domain: Vec<u64>,
    uncolored: Vec<usize>,
    /// `count[e * k + c]`: vertices of edge `e` colored `c`.
    count: Vec<u32>,
    distinct: Vec<usize>,
    max_used: Option<usize>,
    trail: Vec<Undo>,
}

impl State {
    fn new(p: &Problem) -> Self {
        let full = if p.k == 64 { u64::MAX } else { (1u64 << p.k) - 1 };
        State {
            color: vec![None; p.n],
            domain: vec![full; p.n],
            uncolored: p.edges.iter().map(|e| e.len()).collect(),
            count: vec![0; p.edges.len() * p.k],
            distinct: vec![0; p.edges.len()],
            max_used: None,
            trail: Vec::new(),
        }
    }

    /// Colors `v` with `c` and propagates. Returns false on conflict; the
    /// trail still records every change made.
    fn assign(&mut self, p: &Problem, v: usize, c: usize) -> bool {
        self.color[v] = Some(c);
        self.trail.push(Undo::Color(v, c));
        let mut ok = true;
        for &e in &p.incident[v] {
            self.uncolored[e] -= 1;
            let slot = e * p.k + c;
            self.count[slot] += 1;
            if self.count[slot] == 1 {
                self.distinct[e] += 1;
            }
        }
        for &e in &p.incident[v] {
            if self.distinct[e] != 1 {
                continue;
            }
            match self.uncolored[e] {
                0 => ok = false,
                1 => {
                    let w = *p.edges[e].iter().find(|&&w| self.color[w].is_none()).expect("one uncolored");
                    let only = c;
                    if self.domain[w] & (1 << only) != 0 {
                        self.trail.push(Undo::Domain(w, self.domain[w]));
                        self.domain[w] &= !(1 << only);
                        if self.domain[w] == 0 {
                            ok = false;
                        }
                    }
                }
                _ => {}
            }
            if !ok {
                break;
            }
        }
        ok
    }

    fn undo_to(&mut self, p: &Problem, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().expect("above mark") {
                Undo::Domain(w, old) => self.domain[w] = old,
                Undo::Color(v, c) => {
                    self.color[v] = None;
                    for &e in &p.incident[v] {
                        self.uncolored[e] += 1;
                        let slot = e * p.k + c;
                        self.count[slot] -= 1;
                        if self.count[slot] == 0 {
                            self.distinct[e] -= 1;
                        }
                    }
                }
            }
        }
    }

    /// Smallest domain first, then most edges that can still turn
    /// monochromatic, then the seeded rank.
    fn choose(&self, p: &Problem) -> Option<usize> {
        let mut best: Option<(u32, std::cmp::Reverse<usize>, usize, usize)> = None;
        for v in 0..p.n {
            if self.color[v].is_some() || p.incident[v].is_empty() {
                continue;
            }
            let live = p.incident[v].iter().filter(|&&e| self.distinct[e] <= 1).count();
            let key = (self.domain[v].count_ones(), std::cmp::Reverse(live), p.rank[v], v);
            if best.is_none_or(|b| key < b) {
                best = Some(key);
            }
        }
        best.map(|b| b.3)
    }

    fn candidates(&self, p: &Problem, v: usize) -> Vec<usize> {
        let open = self.max_used.map_or(0, |m| m + 1).min(p.k - 1);
        (0..=open).filter(|&c| self.domain[v] & (1 << c) != 0).collect()
    }

    fn coloring(&self) -> Vec<usize> {
        self.color.iter().map(|c| c.unwrap_or(0)).collect()
    }

    fn search(&mut self, p: &Problem, shared: &Shared<'_>, index: usize) -> Result<Option<Vec<usize>>> {
        let n = shared.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if let Some(limit) = shared.limit {
            if n > limit {
                return Err(Error::Budget(format!("coloring search exceeded {limit} nodes")));
            }
        }
        if shared.best.load(Ordering::Relaxed) < index {
            return Ok(None);
        }
        let Some(v) = self.choose(p) else {
            return Ok(Some(self.coloring()));
        };
        for c in self.candidates(p, v) {
            let mark = self.trail.len();
            let saved = self.max_used;
            self.max_used = Some(saved.map_or(c, |m| m.max(c)));
            if self.assign(p, v, c) {
                if let Some(col) = self.search(p, shared, index)? {
                    return Ok(Some(col));
                }
            }
            self.undo_to(p, mark);
            self.max_used = saved;
        }
        Ok(None)
    }

    /// Decision prefixes of the search tree in depth-first order, split
    /// until there are at least `target` of them or the tree is exhausted.
    fn split(&mut self, p: &Problem, target: usize) -> Vec<Vec<(usize, usize)>> {
        let mut depth = 1;
        loop {
            let mut out = Vec::new();
            let deepest = self.collect(p, depth, &mut Vec::new(), &mut out);
            if out.len() >= target || deepest < depth || depth >= 24 {
                return out;
            }
            depth += 1;
        }
    }

    /// Returns the largest depth reached.
    fn collect(
        &mut self,
        p: &Problem,
        depth: usize,
        prefix: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) -> usize {
        if prefix.len() == depth {
            out.push(prefix.clone());
            return depth;
        }
        let Some(v) = self.choose(p) else {
            out.push(prefix.clone());
            return usize::MAX;
        };
        let mut deepest = prefix.len();
        for c in self.candidates(p, v) {
            let mark = self.trail.len();
            let saved = self.max_used;
            self.max_used = Some(saved.map_or(c, |m| m.max(c)));
            if self.assign(p, v, c) {
                prefix.push((v, c));
                deepest = deepest.max(self.collect(p, depth, prefix, out));
                prefix.pop();
            }
            self.undo_to(p, mark);
            self.max_used = saved;
        }
        deepest
    }
}

/// Whether `coloring` leaves every edge with at least two colors.
pub fn is_proper(coloring: &[usize], edges: &[Vec<usize>]) -> bool {
    edges.iter().all(|e| e.iter().any(|&v| coloring[v] != coloring[e[0]]))
}
