use std::collections::BTreeSet;

use super::RHO;
use crate::error::{Error, Result};
use crate::structures::{validate, ClassTag, Hypergraph, Object, Signature, Structure, Symbol};
use crate::tuples::{mat, place, tp, TotalQuasiorder};

fn require(obj: &Object, tag: ClassTag) -> Result<()> {
    validate(obj, tag).map_err(|v| Error::InvalidObject(format!("not a {tag}: {v}")))
}

/// Orients every edge along the vertex order; singletons become diagonal
/// tuples.
pub fn hypergraph_to_erst(h: &Hypergraph) -> Result<Structure> {
    let r = h.uniformity();
    require(&Object::Hypergraph(h.clone()), ClassTag::Hypergraph(r))?;
    let tuples = h
        .edges()
        .iter()
        .map(|e| if e.len() == 1 { vec![e[0]; r] } else { e.clone() })
        .collect();
    Structure::new(Signature::single(RHO, r)?, h.size(), vec![tuples])
}

/// Forgets the orientation of an r-erst.
pub fn erst_to_hypergraph(s: &Structure) -> Result<Hypergraph> {
    let r = match s.signature().symbols() {
        [sym] => sym.arity,
        _ => return Err(Error::InvalidObject("expected a single relation".into())),
    };
    if r < 2 {
        return Err(Error::InvalidObject("expected arity at least 2".into()));
    }
    require(&Object::Structure(s.clone()), ClassTag::Erst(r))?;
    let edges = s
        .relation(0)
        .iter()
        .map(|t| if t.iter().all(|&x| x == t[0]) { vec![t[0]] } else { t.clone() })
        .collect();
    Hypergraph::new(s.size(), r, edges)
}

/// A reflexive symmetric graph read as a reflexive 2-uniform hypergraph.
pub fn graph_to_hypergraph(s: &Structure) -> Result<Hypergraph> {
    require(&Object::Structure(s.clone()), ClassTag::Graph)?;
    let edges = s
        .relation(0)
        .iter()
        .filter(|t| t[0] <= t[1])
        .map(|t| if t[0] == t[1] { vec![t[0]] } else { t.clone() })
        .collect();
    Hypergraph::new(s.size(), 2, edges)
}

fn x_name(theta: &str, sigma: &TotalQuasiorder) -> String {
    format!("{theta}/{sigma}")
}

/// One symbol `θ/σ` of arity `|classes of σ|` per symbol `θ` and total
/// quasiorder `σ` on its positions, the quasiorders in increasing order.
pub fn x_theta_signature(sig: &Signature) -> Result<Signature> {
    let mut symbols = Vec::new();
    for sym in sig.symbols() {
        for sigma in TotalQuasiorder::all(sym.arity) {
            symbols.push(Symbol { name: x_name(&sym.name, &sigma), arity: sigma.class_count() });
        }
    }
    Signature::new(symbols)
}

/// Splits every relation by tuple type and keeps the matrices.
pub fn dagger(a: &Structure) -> Result<Structure> {
    require(&Object::Structure(a.clone()), ClassTag::Reflexive)?;
    let n = a.size();
    let mut relations = Vec::new();
    for (i, sym) in a.signature().symbols().iter().enumerate() {
        for sigma in TotalQuasiorder::all(sym.arity) {
            let k = sigma.class_count();
            let mut rel: BTreeSet<Vec<usize>> = (0..n).map(|v| vec![v; k]).collect();
            rel.extend(a.relation(i).iter().filter(|t| tp(t) == sigma).map(|t| mat(t)));
            relations.push(rel.into_iter().collect());
        }
    }
    Structure::new(x_theta_signature(a.signature())?, n, relations)
}

/// Inverse of [`dagger`]: reassembles each `θ` from the relations `θ/σ`.
pub fn star(b: &Structure) -> Result<Structure> {
    let mut base: Vec<Symbol> = Vec::new();
    let mut parts: Vec<(usize, TotalQuasiorder)> = Vec::new();
    for sym in b.signature().symbols() {
        let (theta, sigma) = sym
            .name
            .rsplit_once('/')
            .ok_or_else(|| Error::InvalidSignature(format!("`{}` is not of the form θ/σ", sym.name)))?;
        let sigma: TotalQuasiorder = sigma.parse()?;
        if sigma.class_count() != sym.arity {
            return Err(Error::InvalidSignature(format!("`{}` has arity {}", sym.name, sym.arity)));
        }
        let idx = match base.iter().position(|s| s.name == theta) {
            Some(idx) => idx,
            None => {
                base.push(Symbol { name: theta.to_string(), arity: sigma.arity() });
                base.len() - 1
            }
        };
        if base[idx].arity != sigma.arity() {
            return Err(Error::InvalidSignature(format!("`{theta}` used with two arities")));
        }
        parts.push((idx, sigma));
    }
    let base = Signature::new(base)?;
    if &x_theta_signature(&base)? != b.signature() {
        return Err(Error::InvalidSignature("signature is not a complete X_Θ language".into()));
    }
    require(&Object::Structure(b.clone()), ClassTag::ThetaErst)?;
    let mut relations = vec![BTreeSet::new(); base.len()];
    for (j, (idx, sigma)) in parts.iter().enumerate() {
        for t in b.relation(j) {
            relations[*idx].insert(place(sigma, t)?);
        }
    }
    Structure::new(base, b.size(), relations.into_iter().map(|r| r.into_iter().collect()).collect())
}
