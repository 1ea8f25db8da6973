use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::order::ChainMap;
use crate::structures::{check_morphism, validate, ClassTag, MorphismKind, Object, Structure};

/// The glued object together with one map to the base per cone leg.
#[derive(Debug, Clone)]
pub struct Glued {
    pub d: Structure,
    pub phis: Vec<ChainMap>,
    /// First vertex of each component block inside `d`.
    pub offsets: Vec<usize>,
}

/// Glues one component per symbol of `b` into a single object.
///
/// `components[s]` carries only the `s`-th symbol of `b`, and
/// `legs[i][s]` is a strong rigid quotient map from `components[s]` onto
/// the reduct of `b` to that symbol. The result lays the components out
/// block by block, relates each symbol on its own block plus the diagonal, and
/// maps block `s` through `legs[i][s]`.
pub fn glue_cone(components: &[Structure], legs: &[Vec<ChainMap>], b: &Structure) -> Result<Glued> {
    validate(&Object::Structure(b.clone()), ClassTag::ThetaErst)
        .map_err(|v| Error::InvalidObject(format!("base is not an erst: {v}")))?;
    let sig = b.signature();
    if components.len() != sig.len() {
        return Err(Error::LengthMismatch { expected: sig.len(), actual: components.len() });
    }
    let mut offsets = Vec::with_capacity(components.len());
    let mut total = 0;
    for (s, c) in components.iter().enumerate() {
        if c.signature().symbols() != &sig.symbols()[s..=s] {
            return Err(Error::InvalidSignature(format!("component {} must carry `{}` only", s + 1, sig.symbols()[s].name)));
        }
        validate(&Object::Structure(c.clone()), ClassTag::ThetaErst)
            .map_err(|v| Error::InvalidObject(format!("component {} is not an erst: {v}", s + 1)))?;
        offsets.push(total);
        total += c.size();
    }
    let reducts: Vec<Object> = (0..sig.len()).map(|s| Object::Structure(b.reduct(s))).collect();
    for (i, leg) in legs.iter().enumerate() {
        if leg.len() != components.len() {
            return Err(Error::LengthMismatch { expected: components.len(), actual: leg.len() });
        }
        for (s, q) in leg.iter().enumerate() {
            let c = Object::Structure(components[s].clone());
            let verdict = check_morphism(&c, &reducts[s], q, MorphismKind::StrongRigidQuotient)?;
            if let Some(v) = verdict.violation() {
                return Err(Error::IllPosed(format!("leg {} component {}: {v}", i + 1, s + 1)));
            }
        }
    }
    let relations = sig
        .symbols()
        .iter()
        .enumerate()
        .map(|(s, sym)| {
            let mut rel: BTreeSet<Vec<usize>> = (0..total).map(|v| vec![v; sym.arity]).collect();
            rel.extend(components[s].relation(0).iter().map(|t| t.iter().map(|&x| x + offsets[s]).collect()));
            rel.into_iter().collect()
        })
        .collect();
    let d = Structure::new(sig.clone(), total, relations)?;
    let phis = legs
        .iter()
        .map(|leg| ChainMap::new(b.size(), leg.iter().flat_map(|q| q.images().iter().copied()).collect()))
        .collect::<Result<Vec<_>>>()?;
    Ok(Glued { d, phis, offsets })
}
