//! The finite worked facts `verify-paper` re-derives.

use dual_ramsey::arrow::{HomCache, SolverOptions};
use dual_ramsey::constructions::{build_named, graph_to_hypergraph, Named};
use dual_ramsey::order::ChainMap;
use dual_ramsey::structures::{check_morphism, induced_edge_map, MorphismKind, Object, Verdict};
use dual_ramsey::tournament::{critical_pairs, matrix_scan, siblings_witness_search, verify_tournament_counterexample, Tournament};
use dual_ramsey::tuples::{mat, tp, tup, TotalQuasiorder};

pub struct Fact {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

/// The critical pairs of `C3` against `C3+`, smaller cell first.
pub const EXPECTED_PAIRS: [&str; 18] = [
    "(11,23)", "(11,32)", "(11,34)", "(12,21)", "(12,33)", "(12,34)", "(13,22)", "(13,31)", "(13,34)", "(14,21)",
    "(14,22)", "(14,23)", "(21,33)", "(22,31)", "(23,32)", "(24,31)", "(24,32)", "(24,33)",
];

const F_ROW: [&str; 8] = ["1", "1", "2", "3", "1", "12", "13", "23"];
const G_ROW: [&str; 8] = ["1", "2", "3", "3", "12", "23", "13", "3"];

fn fact(name: &'static str, run: impl FnOnce() -> Result<String, String>) -> Fact {
    match run() {
        Ok(detail) => Fact { name, pass: true, detail },
        Err(detail) => Fact { name, pass: false, detail },
    }
}

fn e(err: dual_ramsey::Error) -> String {
    err.to_string()
}

fn cycles() -> Result<(Object, Object), String> {
    let c3 = graph_to_hypergraph(&build_named(Named::Cycle3).map_err(e)?).map_err(e)?;
    let c4 = graph_to_hypergraph(&build_named(Named::Cycle4).map_err(e)?).map_err(e)?;
    Ok((c4.into(), c3.into()))
}

fn edge_row(f: &ChainMap) -> Result<Vec<String>, String> {
    let (c4, c3) = cycles()?;
    let (Object::Hypergraph(h4), Object::Hypergraph(h3)) = (&c4, &c3) else { unreachable!() };
    let table = induced_edge_map(h4, h3, f).map_err(e)?;
    Ok(table.iter().map(|(_, img)| img.iter().map(|x| (x + 1).to_string()).collect()).collect())
}

pub fn all(opts: &SolverOptions) -> Vec<Fact> {
    let f = ChainMap::from_one_based(3, &[1, 1, 2, 3]).expect("valid map");
    let g = ChainMap::from_one_based(3, &[1, 2, 3, 3]).expect("valid map");
    let kind = MorphismKind::HypergraphStrongRigidQuotient;
    vec![
        fact("f-is-strong-rigid-quotient", || {
            let (c4, c3) = cycles()?;
            match check_morphism(&c4, &c3, &f, kind).map_err(e)? {
                Verdict::Pass => Ok("pass".into()),
                Verdict::Fail(v) => Err(v.to_string()),
            }
        }),
        fact("g-is-not-strong-rigid-quotient", || {
            let (c4, c3) = cycles()?;
            match check_morphism(&c4, &c3, &g, kind).map_err(e)? {
                Verdict::Pass => Err("g passes".into()),
                Verdict::Fail(v) => Ok(v.to_string()),
            }
        }),
        fact("induced-edge-tables", || {
            let (fr, gr) = (edge_row(&f)?, edge_row(&g)?);
            if fr == F_ROW && gr == G_ROW {
                Ok(format!("f̃ = {}, g̃ = {}", fr.join(" "), gr.join(" ")))
            } else {
                Err(format!("f̃ = {fr:?}, g̃ = {gr:?}"))
            }
        }),
        fact("type-matrix-roundtrips", || {
            let mut n = 0;
            for arity in 1..=4 {
                for sigma in TotalQuasiorder::all(arity) {
                    for a in 0..5usize.pow(arity as u32) {
                        let t: Vec<usize> = (0..arity).map(|i| a / 5usize.pow(i as u32) % 5).collect();
                        if tp(&t) == sigma {
                            if tup(&sigma, &mat(&t)).map_err(e)? != t {
                                return Err(format!("tuple {t:?}"));
                            }
                            n += 1;
                        }
                    }
                }
            }
            Ok(format!("{n} tuples"))
        }),
        fact("critical-pairs", || {
            let pairs: Vec<String> = critical_pairs(&Tournament::c3(), &Tournament::c3_plus()).iter().map(|p| p.to_string()).collect();
            if pairs == EXPECTED_PAIRS {
                Ok(pairs.join(" "))
            } else {
                Err(pairs.join(" "))
            }
        }),
        fact("matrix-scan-empty", || {
            let pairs = critical_pairs(&Tournament::c3(), &Tournament::c3_plus());
            match matrix_scan(&pairs, 3, 4).map_err(e)?.len() {
                0 => Ok("0 of 4096".into()),
                n => Err(format!("{n} matrices survive")),
            }
        }),
        fact("no-common-inflation", || match siblings_witness_search(&Tournament::c3(), &Tournament::c3_plus(), 6) {
            None => Ok("none on at most 6 vertices".into()),
            Some(t) => Err(format!("found one on {} vertices", t.size())),
        }),
        fact("tournament-counterexample", || {
            let t = Tournament::new(build_named(Named::Thm7B).map_err(e)?).map_err(e)?;
            let r = verify_tournament_counterexample(&t, 100_000, opts, &HomCache::new()).map_err(e)?;
            if r.confirmed() {
                Ok(format!("{} maps w split; arrow fails; completion: {}", r.rows.len(), r.completion))
            } else {
                Err(format!("all_split={} chi_is_witness={}", r.all_split, r.chi_is_witness))
            }
        }),
    ]
}
