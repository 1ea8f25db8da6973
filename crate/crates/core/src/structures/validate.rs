use std::fmt;
use std::str::FromStr;

use super::{fmt_set, fmt_tuple, Hypergraph, MetricSpace, Object, Structure, Violation, METRIC_EPS};
use crate::error::Error;

/// Class memberships an object can be checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassTag {
    Reflexive,
    /// A reflexive structure with one symbol of arity `r` whose
    /// non-diagonal tuples are strictly increasing.
    Erst(usize),
    /// The erst condition for every symbol.
    ThetaErst,
    Hypergraph(usize),
    /// Reflexive and symmetric, one binary symbol.
    Graph,
    /// Antisymmetric off the diagonal, one binary symbol.
    OrientedGraph,
    /// No directed cycle through distinct vertices, one binary symbol.
    AcyclicDigraph,
    DigraphWithLinearExtension,
    Poset,
    PosetWithLinearExtension,
    Tournament,
    Metric,
}

impl ClassTag {
    pub fn name(&self) -> String {
        match self {
            ClassTag::Reflexive => "reflexive".into(),
            ClassTag::Erst(r) => format!("{r}-erst"),
            ClassTag::ThetaErst => "theta-erst".into(),
            ClassTag::Hypergraph(r) => format!("hypergraph({r})"),
            ClassTag::Graph => "graph".into(),
            ClassTag::OrientedGraph => "oriented-graph".into(),
            ClassTag::AcyclicDigraph => "acyclic-digraph".into(),
            ClassTag::DigraphWithLinearExtension => "digraph-with-linear-extension".into(),
            ClassTag::Poset => "poset".into(),
            ClassTag::PosetWithLinearExtension => "poset-with-linear-extension".into(),
            ClassTag::Tournament => "tournament".into(),
            ClassTag::Metric => "metric".into(),
        }
    }
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for ClassTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let tag = match s {
            "reflexive" => ClassTag::Reflexive,
            "theta-erst" => ClassTag::ThetaErst,
            "graph" => ClassTag::Graph,
            "oriented-graph" => ClassTag::OrientedGraph,
            "acyclic-digraph" => ClassTag::AcyclicDigraph,
            "digraph-with-linear-extension" => ClassTag::DigraphWithLinearExtension,
            "poset" => ClassTag::Poset,
            "poset-with-linear-extension" => ClassTag::PosetWithLinearExtension,
            "tournament" => ClassTag::Tournament,
            "metric" => ClassTag::Metric,
            _ => {
                if let Some(r) = s.strip_suffix("-erst") {
                    ClassTag::Erst(parse_arity(s, r)?)
                } else if let Some(r) = s.strip_prefix("hypergraph(").and_then(|t| t.strip_suffix(')')) {
                    ClassTag::Hypergraph(parse_arity(s, r)?)
                } else {
                    return Err(Error::UnknownName(s.to_string()));
                }
            }
        };
        Ok(tag)
    }
}

fn parse_arity(whole: &str, r: &str) -> Result<usize, Error> {
    match r.parse::<usize>() {
        Ok(r) if r >= 1 => Ok(r),
        _ => Err(Error::UnknownName(whole.to_string())),
    }
}

/// Checks `obj` against `tag`, reporting the first violated condition.
pub fn validate(obj: &Object, tag: ClassTag) -> Result<(), Violation> {
    match (obj, tag) {
        (Object::Structure(s), ClassTag::Reflexive) => reflexive(s),
        (Object::Structure(s), ClassTag::Erst(r)) => {
            if s.signature().len() != 1 || s.signature().symbols()[0].arity != r {
                return Err(Violation::new(
                    "signature",
                    format!("an {r}-erst has a single symbol of arity {r}"),
                    vec![],
                ));
            }
            reflexive(s)?;
            increasing(s)
        }
        (Object::Structure(s), ClassTag::ThetaErst) => {
            reflexive(s)?;
            increasing(s)
        }
        (Object::Hypergraph(h), ClassTag::Hypergraph(r)) => hypergraph(h, r),
        (Object::Metric(m), ClassTag::Metric) => metric(m),
        (Object::Structure(s), tag) if is_digraph_tag(tag) => digraph(s, tag),
        (obj, tag) => Err(Violation::new(
            "kind",
            format!("class {tag} does not apply to a {}", obj.kind_name()),
            vec![],
        )),
    }
}

fn is_digraph_tag(tag: ClassTag) -> bool {
    matches!(
        tag,
        ClassTag::Graph
            | ClassTag::OrientedGraph
            | ClassTag::AcyclicDigraph
            | ClassTag::DigraphWithLinearExtension
            | ClassTag::Poset
            | ClassTag::PosetWithLinearExtension
            | ClassTag::Tournament
    )
}

fn reflexive(s: &Structure) -> Result<(), Violation> {
    for (i, sym) in s.signature().symbols().iter().enumerate() {
        for v in 0..s.size() {
            let diag = vec![v; sym.arity];
            if !s.contains(i, &diag) {
                return Err(Violation::new(
                    "reflexive",
                    format!("diagonal tuple {} missing from `{}`", fmt_tuple(&diag), sym.name),
                    vec![diag],
                ));
            }
        }
    }
    Ok(())
}

fn increasing(s: &Structure) -> Result<(), Violation> {
    for (i, sym) in s.signature().symbols().iter().enumerate() {
        for t in s.relation(i) {
            let diagonal = t.iter().all(|&x| x == t[0]);
            if !diagonal && t.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Violation::new(
                    "linear-extension",
                    format!("tuple {} of `{}` is not increasing", fmt_tuple(t), sym.name),
                    vec![t.clone()],
                ));
            }
        }
    }
    Ok(())
}

fn hypergraph(h: &Hypergraph, r: usize) -> Result<(), Violation> {
    if h.uniformity() != r {
        return Err(Violation::new(
            "uniformity",
            format!("hypergraph is {}-uniform, not {r}-uniform", h.uniformity()),
            vec![],
        ));
    }
    for v in 0..h.size() {
        if !h.contains(&[v]) {
            return Err(Violation::new(
                "reflexive",
                format!("singleton {} missing", fmt_set(&[v])),
                vec![vec![v]],
            ));
        }
    }
    for e in h.edges() {
        if e.len() != 1 && e.len() != r {
            return Err(Violation::new(
                "uniformity",
                format!("edge {} has size {}", fmt_set(e), e.len()),
                vec![e.clone()],
            ));
        }
    }
    Ok(())
}

fn metric(m: &MetricSpace) -> Result<(), Violation> {
    let n = m.size();
    for x in 0..n {
        if m.dist(x, x).abs() > METRIC_EPS {
            return Err(Violation::new("zero-diagonal", format!("d({0},{0}) is nonzero", x + 1), vec![vec![x, x]]));
        }
    }
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            if (m.dist(x, y) - m.dist(y, x)).abs() > METRIC_EPS {
                return Err(Violation::new(
                    "symmetry",
                    format!("d({},{}) differs from d({},{})", x + 1, y + 1, y + 1, x + 1),
                    vec![vec![x, y]],
                ));
            }
            if m.dist(x, y) <= METRIC_EPS {
                return Err(Violation::new(
                    "positivity",
                    format!("d({},{}) is not positive", x + 1, y + 1),
                    vec![vec![x, y]],
                ));
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if m.dist(x, y) > m.dist(x, z) + m.dist(z, y) + METRIC_EPS {
                    return Err(Violation::new(
                        "triangle",
                        format!("d({},{}) exceeds the path through {}", x + 1, y + 1, z + 1),
                        vec![vec![x, z, y]],
                    ));
                }
            }
        }
    }
    Ok(())
}

fn digraph(s: &Structure, tag: ClassTag) -> Result<(), Violation> {
    let sig = s.signature();
    if sig.len() != 1 || sig.symbols()[0].arity != 2 {
        return Err(Violation::new("signature", "expected a single binary symbol".into(), vec![]));
    }
    let n = s.size();
    let arrow = |x: usize, y: usize| s.contains(0, &[x, y]);
    if matches!(
        tag,
        ClassTag::Graph
            | ClassTag::DigraphWithLinearExtension
            | ClassTag::Poset
            | ClassTag::PosetWithLinearExtension
            | ClassTag::Tournament
    ) {
        reflexive(s)?;
    }
    let pair_violation = |clause: &str, what: &str, x: usize, y: usize| {
        Violation::new(clause, format!("{} for the pair ({},{})", what, x + 1, y + 1), vec![vec![x, y]])
    };
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            match tag {
                ClassTag::Graph if arrow(x, y) && !arrow(y, x) => {
                    return Err(pair_violation("symmetry", "edge has no reverse", x, y));
                }
                ClassTag::OrientedGraph | ClassTag::Poset | ClassTag::PosetWithLinearExtension
                    if arrow(x, y) && arrow(y, x) =>
                {
                    return Err(pair_violation("antisymmetry", "both directions present", x, y));
                }
                ClassTag::Tournament if arrow(x, y) == arrow(y, x) => {
                    let what = if arrow(x, y) { "both directions present" } else { "no edge" };
                    return Err(pair_violation("tournament", what, x, y));
                }
                ClassTag::DigraphWithLinearExtension | ClassTag::PosetWithLinearExtension
                    if arrow(x, y) && x > y =>
                {
                    return Err(pair_violation("linear-extension", "edge points backwards", x, y));
                }
                _ => {}
            }
        }
    }
    if matches!(tag, ClassTag::Poset | ClassTag::PosetWithLinearExtension) {
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if arrow(x, y) && arrow(y, z) && !arrow(x, z) {
                        return Err(Violation::new(
                            "transitivity",
                            format!("({},{}) and ({},{}) present but not ({},{})", x + 1, y + 1, y + 1, z + 1, x + 1, z + 1),
                            vec![vec![x, y, z]],
                        ));
                    }
                }
            }
        }
    }
    if tag == ClassTag::AcyclicDigraph {
        if let Some(cycle) = find_cycle(n, &arrow) {
            let shown: Vec<String> = cycle.iter().map(|v| (v + 1).to_string()).collect();
            return Err(Violation::new("acyclic", format!("directed cycle {}", shown.join("->")), vec![cycle]));
        }
    }
    Ok(())
}

/// A directed cycle through distinct vertices, ignoring loops.
fn find_cycle(n: usize, arrow: &dyn Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
    // 0 unvisited, 1 on stack, 2 done
    let mut state = vec![0u8; n];
    let mut stack = Vec::new();
    fn dfs(
        v: usize,
        n: usize,
        arrow: &dyn Fn(usize, usize) -> bool,
        state: &mut [u8],
        stack: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        state[v] = 1;
        stack.push(v);
        for w in 0..n {
            if w == v || !arrow(v, w) {
                continue;
            }
            if state[w] == 1 {
                let start = stack.iter().position(|&x| x == w).unwrap();
                return Some(stack[start..].to_vec());
            }
            if state[w] == 0 {
                if let Some(c) = dfs(w, n, arrow, state, stack) {
                    return Some(c);
                }
            }
        }
        stack.pop();
        state[v] = 2;
        None
    }
    for v in 0..n {
        if state[v] == 0 {
            if let Some(c) = dfs(v, n, arrow, &mut state, &mut stack) {
                return Some(c);
            }
        }
    }
    None
}
