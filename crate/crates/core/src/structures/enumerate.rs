use super::morphism::{check_morphism, MorphismKind};
use super::{validate, ClassTag, Object};
use crate::error::Result;
use crate::order::{enum_rigid_surjections, normalize_subset, ChainMap};
use crate::structures::METRIC_EPS;

/// Relational constraints on a partial map, indexed by the largest vertex
/// they mention, so each is tested as soon as all its vertices are mapped.
enum Partial<'a> {
    None,
    Tuples { cod: &'a super::Structure, by_max: Vec<Vec<(usize, Vec<usize>)>> },
    Edges { cod: &'a super::Hypergraph, by_max: Vec<Vec<Vec<usize>>> },
    Metric { dom: &'a super::MetricSpace, cod: &'a super::MetricSpace },
}

struct Search<'a> {
    cod_size: usize,
    surjective: bool,
    rigid: bool,
    injective: bool,
    partial: Partial<'a>,
    dom: &'a Object,
    cod: &'a Object,
    kind: MorphismKind,
    out: Vec<ChainMap>,
}

/// All maps `dom → cod` of class `kind`, in lexicographic order of their
/// image arrays.
pub fn enum_morphisms(dom: &Object, cod: &Object, kind: MorphismKind) -> Result<Vec<ChainMap>> {
    // surfaces kind and shape errors before searching
    check_morphism(dom, cod, &ChainMap::constant(dom.size(), cod.size(), 0)?, kind)?;
    if let (Object::Chain(a), Object::Chain(b), MorphismKind::RigidSurjection) = (dom, cod, kind) {
        return Ok(enum_rigid_surjections(a.size(), b.size()));
    }
    use MorphismKind as K;
    let reflexive_pair = match (dom, cod) {
        (Object::Structure(a), Object::Structure(b)) => {
            !a.signature().is_empty()
                && validate(dom, ClassTag::Reflexive).is_ok()
                && validate(cod, ClassTag::Reflexive).is_ok()
                && b.signature() == a.signature()
        }
        _ => false,
    };
    let via_diagonal = matches!(kind, K::StrongRigidQuotient | K::StrongRigidQuotientOfStructures) && reflexive_pair;
    let rigid = matches!(
        kind,
        K::RigidSurjection | K::RigidSurjectiveHomomorphism | K::NonexpansiveRigidSurjection | K::HypergraphStrongRigidQuotient
    ) || via_diagonal;
    let surjective = rigid || kind == K::QuotientMap;
    let partial = if kind.preserves_relations() {
        match (dom, cod) {
            (Object::Structure(a), Object::Structure(b)) => {
                let mut by_max = vec![Vec::new(); a.size()];
                for i in 0..a.signature().len() {
                    for t in a.relation(i) {
                        by_max[*t.iter().max().expect("arity >= 1")].push((i, t.clone()));
                    }
                }
                Partial::Tuples { cod: b, by_max }
            }
            (Object::Hypergraph(a), Object::Hypergraph(b)) => {
                let mut by_max = vec![Vec::new(); a.size()];
                for e in a.edges() {
                    by_max[*e.last().expect("nonempty edge")].push(e.clone());
                }
                Partial::Edges { cod: b, by_max }
            }
            _ => Partial::None,
        }
    } else if let (Object::Metric(a), Object::Metric(b)) = (dom, cod) {
        Partial::Metric { dom: a, cod: b }
    } else {
        Partial::None
    };
    let mut search = Search {
        cod_size: cod.size(),
        surjective,
        rigid,
        injective: kind == K::Embedding,
        partial,
        dom,
        cod,
        kind,
        out: Vec::new(),
    };
    if search.injective && dom.size() > cod.size() {
        return Ok(Vec::new());
    }
    let mut images = Vec::with_capacity(dom.size());
    let mut hits = vec![0usize; cod.size()];
    search.extend(&mut images, &mut hits, 0)?;
    Ok(search.out)
}

impl Search<'_> {
    fn extend(&mut self, images: &mut Vec<usize>, hits: &mut [usize], distinct: usize) -> Result<()> {
        let n = self.dom.size();
        let pos = images.len();
        if pos == n {
            let f = ChainMap::new(self.cod_size, images.clone())?;
            if check_morphism(self.dom, self.cod, &f, self.kind)?.is_pass() {
                self.out.push(f);
            }
            return Ok(());
        }
        let remaining = n - pos - 1;
        let top = if self.rigid { distinct.min(self.cod_size - 1) } else { self.cod_size - 1 };
        for y in 0..=top {
            if self.injective && hits[y] > 0 {
                continue;
            }
            let fresh = usize::from(hits[y] == 0);
            if self.surjective && self.cod_size - (distinct + fresh) > remaining {
                continue;
            }
            images.push(y);
            if self.consistent(images) {
                hits[y] += 1;
                self.extend(images, hits, distinct + fresh)?;
                hits[y] -= 1;
            }
            images.pop();
        }
        Ok(())
    }

    /// Checks the constraints whose largest vertex was just mapped.
    fn consistent(&self, images: &[usize]) -> bool {
        let v = images.len() - 1;
        match &self.partial {
            Partial::None => true,
            Partial::Tuples { cod, by_max } => by_max[v].iter().all(|(i, t)| {
                let img: Vec<usize> = t.iter().map(|&x| images[x]).collect();
                cod.contains(*i, &img)
            }),
            Partial::Edges { cod, by_max } => by_max[v].iter().all(|e| {
                let img: Vec<usize> = e.iter().map(|&x| images[x]).collect();
                cod.contains(&normalize_subset(&img))
            }),
            Partial::Metric { dom, cod } => {
                (0..v).all(|u| cod.dist(images[u], images[v]) <= dom.dist(u, v) + METRIC_EPS)
            }
        }
    }
}

/// The invertible morphisms `a → a` of class `kind` whose inverse is again
/// of class `kind`.
pub fn automorphisms(a: &Object, kind: MorphismKind) -> Result<Vec<ChainMap>> {
    let mut out = Vec::new();
    for f in enum_morphisms(a, a, kind)? {
        if let Some(inv) = f.inverse() {
            if check_morphism(a, a, &inv, kind)?.is_pass() {
                out.push(f);
            }
        }
    }
    Ok(out)
}
