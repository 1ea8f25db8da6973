use super::tensor_vertex;
use crate::error::{Error, Result};
use crate::order::{is_rigid_surjection, ChainMap};
use crate::structures::{validate, ClassTag, Object, Structure};

fn single_arity(a: &Structure) -> Result<usize> {
    match a.signature().symbols() {
        [sym] if sym.arity >= 2 => Ok(sym.arity),
        _ => Err(Error::InvalidObject("expected a single relation of arity at least 2".into())),
    }
}

/// The map `r⊗N → A` sending vertex `i` of level `s` to the `i`-th entry of
/// the tuple `u(s)`, where `u` indexes the relation of `A` in sal order.
pub fn preadjoint_phi(a: &Structure, u: &ChainMap) -> Result<ChainMap> {
    let r = single_arity(a)?;
    validate(&Object::Structure(a.clone()), ClassTag::Erst(r))
        .map_err(|v| Error::InvalidObject(format!("not an {r}-erst: {v}")))?;
    let rho = a.relation_sal(0);
    if u.cod() != rho.len() {
        return Err(Error::LengthMismatch { expected: rho.len(), actual: u.cod() });
    }
    if !is_rigid_surjection(u) {
        return Err(Error::IllPosed(format!("{u} is not a rigid surjection onto the relation")));
    }
    let levels = u.dom();
    let mut images = vec![0; r * levels];
    for s in 0..levels {
        let e = &rho[u.apply(s)];
        for i in 0..r {
            images[tensor_vertex(r, i, s)] = e[i];
        }
    }
    ChainMap::new(a.size(), images)
}

/// The map a homomorphism induces on one relation, both relations indexed
/// in sal order.
pub fn induced_sal_map(dom: &Structure, cod: &Structure, f: &ChainMap, symbol: usize) -> Result<ChainMap> {
    let images = crate::structures::induced_tuple_map(dom, cod, f, symbol)?
        .into_iter()
        .map(|(_, img)| cod.sal_rank(symbol, &img).expect("image lies in the relation"))
        .collect();
    ChainMap::new(cod.relation_sal(symbol).len(), images)
}
