use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use super::{fmt_set, fmt_tuple, Hypergraph, MetricSpace, Object, Structure, Violation, METRIC_EPS};
use crate::error::{Error, Result};
use crate::order::{normalize_subset, rigid_scan, ChainMap, RigidScan};

/// Morphism classes a map can be checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MorphismKind {
    RigidSurjection,
    Homomorphism,
    Embedding,
    QuotientMap,
    RigidSurjectiveHomomorphism,
    /// Induced tuple maps are rigid surjections in the sal orders, for every
    /// symbol.
    StrongRigidQuotient,
    /// As above, plus order compatibility on every tuple the map does not
    /// collapse.
    StrongRigidQuotientOfStructures,
    HypergraphStrongRigidQuotient,
    NonexpansiveRigidSurjection,
}

impl MorphismKind {
    pub const ALL: [MorphismKind; 9] = [
        MorphismKind::RigidSurjection,
        MorphismKind::Homomorphism,
        MorphismKind::Embedding,
        MorphismKind::QuotientMap,
        MorphismKind::RigidSurjectiveHomomorphism,
        MorphismKind::StrongRigidQuotient,
        MorphismKind::StrongRigidQuotientOfStructures,
        MorphismKind::HypergraphStrongRigidQuotient,
        MorphismKind::NonexpansiveRigidSurjection,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            MorphismKind::RigidSurjection => "rigid-surjection",
            MorphismKind::Homomorphism => "homomorphism",
            MorphismKind::Embedding => "embedding",
            MorphismKind::QuotientMap => "quotient-map",
            MorphismKind::RigidSurjectiveHomomorphism => "rigid-surjective-homomorphism",
            MorphismKind::StrongRigidQuotient => "strong-rigid-quotient",
            MorphismKind::StrongRigidQuotientOfStructures => "strong-rigid-quotient-of-structures",
            MorphismKind::HypergraphStrongRigidQuotient => "hypergraph-strong-rigid-quotient",
            MorphismKind::NonexpansiveRigidSurjection => "nonexpansive-rigid-surjection",
        }
    }

    /// Whether every map of this kind preserves the relations.
    pub(crate) fn preserves_relations(&self) -> bool {
        !matches!(self, MorphismKind::RigidSurjection | MorphismKind::NonexpansiveRigidSurjection)
    }
}

impl fmt::Display for MorphismKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MorphismKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MorphismKind::ALL
            .iter()
            .copied()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Violation),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn violation(&self) -> Option<&Violation> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(v) => Some(v),
        }
    }
}

type Clause = std::result::Result<(), Violation>;

/// Checks whether `f` is a morphism of class `kind` from `dom` to `cod`.
///
/// Errors signal a map of the wrong shape or a kind that does not apply to
/// the two objects; a map that merely fails the class is a `Fail` verdict.
pub fn check_morphism(dom: &Object, cod: &Object, f: &ChainMap, kind: MorphismKind) -> Result<Verdict> {
    if f.dom() != dom.size() {
        return Err(Error::LengthMismatch { expected: dom.size(), actual: f.dom() });
    }
    if f.cod() != cod.size() {
        return Err(Error::InvalidObject(format!(
            "map targets {} elements but the codomain has {}",
            f.cod(),
            cod.size()
        )));
    }
    use MorphismKind as K;
    let clause = match (kind, dom, cod) {
        (K::RigidSurjection, _, _) if dom.kind_name() == cod.kind_name() => rigid(f),
        (_, Object::Structure(a), Object::Structure(b)) if kind.preserves_relations() => {
            if a.signature() != b.signature() {
                return Err(Error::KindMismatch {
                    kind: kind.to_string(),
                    detail: "structures over different signatures".into(),
                });
            }
            structure_clauses(a, b, f, kind)?
        }
        (_, Object::Hypergraph(a), Object::Hypergraph(b)) if kind.preserves_relations() => {
            if a.uniformity() != b.uniformity() {
                return Err(Error::KindMismatch {
                    kind: kind.to_string(),
                    detail: "hypergraphs of different uniformity".into(),
                });
            }
            hypergraph_clauses(a, b, f, kind)?
        }
        (K::NonexpansiveRigidSurjection, Object::Metric(a), Object::Metric(b)) => {
            rigid(f).and_then(|()| nonexpansive(a, b, f))
        }
        _ => {
            return Err(Error::KindMismatch {
                kind: kind.to_string(),
                detail: format!("a map from a {} to a {}", dom.kind_name(), cod.kind_name()),
            })
        }
    };
    Ok(match clause {
        Ok(()) => Verdict::Pass,
        Err(v) => Verdict::Fail(v),
    })
}

fn structure_clauses(a: &Structure, b: &Structure, f: &ChainMap, kind: MorphismKind) -> Result<Clause> {
    use MorphismKind as K;
    let hom = homomorphism(a, b, f);
    Ok(match kind {
        K::Homomorphism => hom,
        K::Embedding => hom.and_then(|()| injective(f)).and_then(|()| reflects(a, b, f)),
        K::QuotientMap => hom.and_then(|()| surjective(f)).and_then(|()| tuple_preimages(a, b, f)),
        K::RigidSurjectiveHomomorphism => hom.and_then(|()| rigid(f)),
        K::StrongRigidQuotient => hom.and_then(|()| sal_rigid_tuples(a, b, f)),
        K::StrongRigidQuotientOfStructures => hom.and_then(|()| {
            for i in 0..a.signature().len() {
                sal_rigid_tuples_for(a, b, f, i)?;
                order_compatible(a.relation_sal(i).iter().map(|t| t.as_slice()), f, "tuple", fmt_tuple)?;
            }
            Ok(())
        }),
        _ => {
            return Err(Error::KindMismatch {
                kind: kind.to_string(),
                detail: "a map between structures".into(),
            })
        }
    })
}

fn hypergraph_clauses(a: &Hypergraph, b: &Hypergraph, f: &ChainMap, kind: MorphismKind) -> Result<Clause> {
    use MorphismKind as K;
    let hom = edge_homomorphism(a, b, f);
    Ok(match kind {
        K::Homomorphism => hom,
        K::Embedding => hom.and_then(|()| injective(f)).and_then(|()| reflects_edges(a, b, f)),
        K::QuotientMap => hom.and_then(|()| surjective(f)).and_then(|()| edge_preimages(a, b, f)),
        K::RigidSurjectiveHomomorphism => hom.and_then(|()| rigid(f)),
        K::HypergraphStrongRigidQuotient => hom
            .and_then(|()| sal_rigid_edges(a, b, f))
            .and_then(|()| order_compatible(a.edges_sal().iter().map(|e| e.as_slice()), f, "edge", fmt_set)),
        _ => {
            return Err(Error::KindMismatch {
                kind: kind.to_string(),
                detail: "a map between hypergraphs".into(),
            })
        }
    })
}

fn rigid(f: &ChainMap) -> Clause {
    match rigid_scan(f.images(), f.cod()) {
        RigidScan::Rigid => Ok(()),
        RigidScan::Jump { position, expected, found } => Err(Violation::new(
            "rigid",
            format!(
                "the least preimage of {} is {}, which precedes every preimage of {}",
                found + 1,
                position + 1,
                expected + 1
            ),
            vec![vec![expected], vec![found], vec![position]],
        )),
        RigidScan::Short { reached } => Err(Violation::new(
            "surjective",
            format!("{} has no preimage", reached + 1),
            vec![vec![reached]],
        )),
    }
}

fn surjective(f: &ChainMap) -> Clause {
    match f.min_preimages().iter().position(|p| p.is_none()) {
        None => Ok(()),
        Some(y) => Err(Violation::new("surjective", format!("{} has no preimage", y + 1), vec![vec![y]])),
    }
}

fn injective(f: &ChainMap) -> Clause {
    let mut first = vec![None; f.cod()];
    for (x, &y) in f.images().iter().enumerate() {
        if let Some(p) = first[y] {
            return Err(Violation::new(
                "injective",
                format!("{} and {} both map to {}", p + 1, x + 1, y + 1),
                vec![vec![p, x]],
            ));
        }
        first[y] = Some(x);
    }
    Ok(())
}

fn homomorphism(a: &Structure, b: &Structure, f: &ChainMap) -> Clause {
    for (i, sym) in a.signature().symbols().iter().enumerate() {
        for t in a.relation_sal(i) {
            let img = f.apply_tuple(t);
            if !b.contains(i, &img) {
                return Err(Violation::new(
                    "homomorphism",
                    format!("`{}` tuple {} maps to {}, which is not related", sym.name, fmt_tuple(t), fmt_tuple(&img)),
                    vec![t.clone(), img],
                ));
            }
        }
    }
    Ok(())
}

fn reflects(a: &Structure, b: &Structure, f: &ChainMap) -> Clause {
    let inv = inverse_partial(f);
    for (i, sym) in a.signature().symbols().iter().enumerate() {
        for t in b.relation_sal(i) {
            let pre: Option<Vec<usize>> = t.iter().map(|&y| inv[y]).collect();
            if let Some(pre) = pre {
                if !a.contains(i, &pre) {
                    return Err(Violation::new(
                        "embedding",
                        format!("`{}` tuple {} is the image of the unrelated {}", sym.name, fmt_tuple(t), fmt_tuple(&pre)),
                        vec![pre, t.clone()],
                    ));
                }
            }
        }
    }
    Ok(())
}

fn inverse_partial(f: &ChainMap) -> Vec<Option<usize>> {
    let mut inv = vec![None; f.cod()];
    for (x, &y) in f.images().iter().enumerate() {
        inv[y] = Some(x);
    }
    inv
}

fn tuple_preimages(a: &Structure, b: &Structure, f: &ChainMap) -> Clause {
    for (i, sym) in a.signature().symbols().iter().enumerate() {
        let images: HashSet<Vec<usize>> = a.relation(i).iter().map(|t| f.apply_tuple(t)).collect();
        if let Some(t) = b.relation_sal(i).iter().find(|t| !images.contains(*t)) {
            return Err(Violation::new(
                "quotient",
                format!("`{}` tuple {} is not the image of a related tuple", sym.name, fmt_tuple(t)),
                vec![t.clone()],
            ));
        }
    }
    Ok(())
}

/// Rigidity of induced maps between sal-ordered lists. `image_rank` gives
/// the target rank of each source item, listed in sal order.
fn sal_rigid(
    sources: &[Vec<usize>],
    targets: &[Vec<usize>],
    image_rank: &[usize],
    what: &str,
    show: fn(&[usize]) -> String,
) -> Clause {
    let mut hit = vec![false; targets.len()];
    for &r in image_rank {
        hit[r] = true;
    }
    if let Some(t) = hit.iter().position(|h| !h) {
        return Err(Violation::new(
            "sal-surjective",
            format!("{what} {} has no preimage", show(&targets[t])),
            vec![targets[t].clone()],
        ));
    }
    match rigid_scan(image_rank, targets.len()) {
        RigidScan::Rigid => Ok(()),
        RigidScan::Jump { position, expected, found } => {
            let earlier = image_rank.iter().position(|&r| r == expected).expect("surjective");
            Err(Violation::new(
                "sal-rigid",
                format!(
                    "{what}s {} < {} but the least preimage {} of the first comes after the least preimage {} of the second",
                    show(&targets[expected]),
                    show(&targets[found]),
                    show(&sources[earlier]),
                    show(&sources[position]),
                ),
                vec![
                    targets[expected].clone(),
                    targets[found].clone(),
                    sources[earlier].clone(),
                    sources[position].clone(),
                ],
            ))
        }
        RigidScan::Short { .. } => unreachable!("surjectivity checked above"),
    }
}

fn sal_rigid_tuples(a: &Structure, b: &Structure, f: &ChainMap) -> Clause {
    (0..a.signature().len()).try_for_each(|i| sal_rigid_tuples_for(a, b, f, i))
}

fn sal_rigid_tuples_for(a: &Structure, b: &Structure, f: &ChainMap, i: usize) -> Clause {
    let ranks: Vec<usize> = a
        .relation_sal(i)
        .iter()
        .map(|t| b.sal_rank(i, &f.apply_tuple(t)).expect("homomorphism checked"))
        .collect();
    sal_rigid(a.relation_sal(i), b.relation_sal(i), &ranks, "tuple", fmt_tuple).map_err(|mut v| {
        v.message = format!("`{}`: {}", a.signature().symbols()[i].name, v.message);
        v
    })
}

fn order_compatible<'a>(
    items: impl Iterator<Item = &'a [usize]>,
    f: &ChainMap,
    what: &str,
    show: fn(&[usize]) -> String,
) -> Clause {
    for t in items {
        let first = f.apply(t[0]);
        if t.iter().all(|&x| f.apply(x) == first) {
            continue;
        }
        for &x in t {
            for &y in t {
                if x < y && f.apply(x) >= f.apply(y) {
                    return Err(Violation::new(
                        "order-compatibility",
                        format!(
                            "{what} {} is not collapsed, yet {} < {} while {} >= {}",
                            show(t),
                            x + 1,
                            y + 1,
                            f.apply(x) + 1,
                            f.apply(y) + 1
                        ),
                        vec![t.to_vec(), vec![x, y]],
                    ));
                }
            }
        }
    }
    Ok(())
}

fn edge_image(f: &ChainMap, e: &[usize]) -> Vec<usize> {
    normalize_subset(&f.apply_tuple(e))
}

fn edge_homomorphism(a: &Hypergraph, b: &Hypergraph, f: &ChainMap) -> Clause {
    for e in a.edges_sal() {
        let img = edge_image(f, e);
        if !b.contains(&img) {
            return Err(Violation::new(
                "homomorphism",
                format!("edge {} maps to {}, which is not an edge", fmt_set(e), fmt_set(&img)),
                vec![e.clone(), img],
            ));
        }
    }
    Ok(())
}

fn reflects_edges(a: &Hypergraph, b: &Hypergraph, f: &ChainMap) -> Clause {
    let inv = inverse_partial(f);
    for e in b.edges_sal() {
        let pre: Option<Vec<usize>> = e.iter().map(|&y| inv[y]).collect();
        if let Some(pre) = pre {
            let pre = normalize_subset(&pre);
            if !a.contains(&pre) {
                return Err(Violation::new(
                    "embedding",
                    format!("edge {} is the image of the non-edge {}", fmt_set(e), fmt_set(&pre)),
                    vec![pre, e.clone()],
                ));
            }
        }
    }
    Ok(())
}

fn edge_preimages(a: &Hypergraph, b: &Hypergraph, f: &ChainMap) -> Clause {
    let images: HashSet<Vec<usize>> = a.edges().iter().map(|e| edge_image(f, e)).collect();
    match b.edges_sal().iter().find(|e| !images.contains(*e)) {
        None => Ok(()),
        Some(e) => Err(Violation::new(
            "quotient",
            format!("edge {} is not the image of an edge", fmt_set(e)),
            vec![e.clone()],
        )),
    }
}

fn sal_rigid_edges(a: &Hypergraph, b: &Hypergraph, f: &ChainMap) -> Clause {
    let ranks: Vec<usize> = a
        .edges_sal()
        .iter()
        .map(|e| b.sal_rank(&edge_image(f, e)).expect("homomorphism checked"))
        .collect();
    sal_rigid(a.edges_sal(), b.edges_sal(), &ranks, "edge", fmt_set)
}

fn nonexpansive(a: &MetricSpace, b: &MetricSpace, f: &ChainMap) -> Clause {
    for x in 0..a.size() {
        for y in x + 1..a.size() {
            let d = a.dist(x, y);
            let e = b.dist(f.apply(x), f.apply(y));
            if e > d + METRIC_EPS {
                return Err(Violation::new(
                    "nonexpansive",
                    format!("d({},{}) = {d} grows to {e}", x + 1, y + 1),
                    vec![vec![x, y]],
                ));
            }
        }
    }
    Ok(())
}

/// The induced map on one relation, as (tuple, image) pairs in the sal
/// order of the domain relation.
pub fn induced_tuple_map(
    dom: &Structure,
    cod: &Structure,
    f: &ChainMap,
    symbol: usize,
) -> Result<Vec<(Vec<usize>, Vec<usize>)>> {
    check_shape(dom.size(), cod.size(), f)?;
    if dom.signature() != cod.signature() || symbol >= dom.signature().len() {
        return Err(Error::InvalidSignature("symbol not shared by both structures".into()));
    }
    let name = &dom.signature().symbols()[symbol].name;
    dom.relation_sal(symbol)
        .iter()
        .map(|t| {
            let img = f.apply_tuple(t);
            if cod.contains(symbol, &img) {
                Ok((t.clone(), img))
            } else {
                Err(Error::NotHomomorphism(format!(
                    "`{name}` tuple {} maps to {}",
                    fmt_tuple(t),
                    fmt_tuple(&img)
                )))
            }
        })
        .collect()
}

/// The induced map on edges, as (edge, image) pairs in the sal order of the
/// domain edges.
pub fn induced_edge_map(dom: &Hypergraph, cod: &Hypergraph, f: &ChainMap) -> Result<Vec<(Vec<usize>, Vec<usize>)>> {
    check_shape(dom.size(), cod.size(), f)?;
    dom.edges_sal()
        .iter()
        .map(|e| {
            let img = edge_image(f, e);
            if cod.contains(&img) {
                Ok((e.clone(), img))
            } else {
                Err(Error::NotHomomorphism(format!("edge {} maps to {}", fmt_set(e), fmt_set(&img))))
            }
        })
        .collect()
}

fn check_shape(dom: usize, cod: usize, f: &ChainMap) -> Result<()> {
    if f.dom() != dom {
        return Err(Error::LengthMismatch { expected: dom, actual: f.dom() });
    }
    if f.cod() != cod {
        return Err(Error::LengthMismatch { expected: cod, actual: f.cod() });
    }
    Ok(())
}
