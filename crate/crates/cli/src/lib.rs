//! Command surface of the `dual-ramsey` binary.
//!
//! Every command reads JSON documents from files (`-` for stdin) and writes
//! JSON to stdout. [`run`] returns the text to print and whether the command's
//! verdict was positive; `main` maps that to exit codes 0 and 1, and input
//! errors to 2.

pub mod document;
mod facts;

use std::io::Read;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use dual_ramsey::arrow::{check_arrow, search_ramsey_object, ArrowProblem, ArrowVerdict, Generator, HomCache, SearchOutcome, SolverOptions};
use dual_ramsey::constructions::{
    build_boxtensor, build_empty, build_metric_uniform, build_named, build_tensor, dagger, erst_to_hypergraph,
    graph_to_hypergraph, hypergraph_to_erst, preadjoint_phi, star, Named,
};
use dual_ramsey::order::{Chain, ChainMap};
use dual_ramsey::structures::{check_morphism, enum_morphisms, validate, ClassTag, MorphismKind, Object, Signature, Structure, Verdict};
use dual_ramsey::tournament::{
    critical_pairs, matrix_entry, matrix_scan, siblings_witness_search, verify_tournament_counterexample, Tournament,
};
use serde_json::{json, Value};

use document::{DocKind, MorphismDocument, StructureDocument};

#[derive(Debug, Parser)]
#[command(name = "dual-ramsey", version, about = "Dual Ramsey machinery for finite ordered structures")]
pub struct Cli {
    /// Seed for the solver's branching tie-breaks. Verdicts do not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for coloring searches and scans.
    #[arg(long, global = true, default_value_t = 1)]
    pub workers: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a document and check its declared class, or `--class`.
    Validate {
        doc: String,
        #[arg(long)]
        class: Option<String>,
    },
    /// List every morphism of a kind from A to B.
    EnumHoms {
        a: String,
        b: String,
        #[arg(long)]
        kind: String,
    },
    /// Check one map; `f` is a morphism document or inline labels `1,1,2,3`.
    CheckMap {
        a: String,
        b: String,
        f: String,
        #[arg(long)]
        kind: String,
    },
    /// Build an object: chain N, empty N, empty-erst N, metric-uniform N D,
    /// tensor R N, boxtensor R N, or a named object.
    Build { name: String, args: Vec<String> },
    /// The map from the tensor object onto the erst A through the level map u.
    Preadjoint { a: String, u: String },
    /// Apply a functor pair in one direction: hgr-erst, dagger-star, or
    /// graph-hgr (forward only).
    Functor {
        #[arg(long)]
        pair: FunctorPair,
        #[arg(long, default_value = "fwd")]
        dir: Direction,
        x: String,
    },
    /// Decide C → (B)^A_k.
    CheckArrow {
        c: String,
        b: String,
        a: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        kind: String,
    },
    /// The least generated object arrowing (B)^A_k. Generators: chains,
    /// empty-erst, metric:D, tensor:R.
    SearchRamsey {
        b: String,
        a: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        kind: String,
        #[arg(long, default_value = "chains")]
        generator: String,
        #[arg(long, default_value_t = 8)]
        bound: usize,
    },
    #[command(subcommand)]
    Tournament(TournamentCommand),
    /// Re-derive the finite worked facts and report each.
    VerifyPaper,
}

#[derive(Debug, Subcommand)]
pub enum TournamentCommand {
    /// Cell pairs no common inflation can meet. Defaults to C3 and C3+.
    CriticalPairs { s: Option<String>, s2: Option<String> },
    /// 0/1 matrices with no empty line avoiding every critical pair.
    MatrixScan { s: Option<String>, s2: Option<String> },
    /// A tournament inflating both, up to `--max-n` vertices.
    Siblings {
        s1: Option<String>,
        s2: Option<String>,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
    /// Check the two-coloring of hom(T, A) against every composite set.
    Counterexample {
        t: Option<String>,
        #[arg(long, default_value_t = 100_000)]
        max_homs: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FunctorPair {
    /// Symmetric graphs to 2-uniform hypergraphs; forward only.
    GraphHgr,
    HgrErst,
    DaggerStar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    Fwd,
    Back,
}

/// Malformed or ill-posed input; exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

impl From<dual_ramsey::Error> for InputError {
    fn from(e: dual_ramsey::Error) -> Self {
        InputError(e.to_string())
    }
}

impl From<document::DocError> for InputError {
    fn from(e: document::DocError) -> Self {
        InputError(e.to_string())
    }
}

type Result<T> = std::result::Result<T, InputError>;

/// What a command prints and whether its verdict is positive.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub text: String,
    pub ok: bool,
}

impl Output {
    fn json(value: Value, ok: bool) -> Self {
        Output { text: serde_json::to_string_pretty(&value).expect("serializable") + "\n", ok }
    }

    fn document(doc: &StructureDocument) -> Self {
        Output { text: doc.format(), ok: true }
    }
}

fn read_source(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| InputError(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(Path::new(path)).map_err(|e| InputError(format!("{path}: {e}")))
    }
}

fn load(path: &str) -> Result<StructureDocument> {
    StructureDocument::parse_str(&read_source(path)?).map_err(|e| InputError(format!("{path}: {e}")))
}

/// Inline `1,2,2` or a morphism document path.
fn load_map_doc(arg: &str) -> Result<MorphismDocument> {
    let inline: Option<Vec<usize>> = arg.split(',').map(|s| s.trim().parse().ok()).collect();
    let doc = match inline {
        Some(map) => MorphismDocument { map, source: None, target: None },
        None => MorphismDocument::parse_str(&read_source(arg)?).map_err(|e| InputError(format!("{arg}: {e}")))?,
    };
    if doc.map.contains(&0) {
        return Err(InputError("map labels start at 1".into()));
    }
    Ok(doc)
}

fn load_map(arg: &str, dom: usize, cod: usize) -> Result<ChainMap> {
    Ok(load_map_doc(arg)?.to_map(dom, cod)?)
}

fn kind(s: &str) -> Result<MorphismKind> {
    Ok(s.parse()?)
}

fn options(cli: &Cli) -> SolverOptions {
    SolverOptions { seed: cli.seed, workers: cli.workers.max(1), max_nodes: None }
}

fn verdict_json(v: &Verdict) -> Value {
    match v {
        Verdict::Pass => json!({"pass": true}),
        Verdict::Fail(v) => json!({
            "pass": false,
            "clause": v.clause,
            "message": v.message,
            "witness": v.witness.iter().map(|t| t.iter().map(|x| x + 1).collect::<Vec<_>>()).collect::<Vec<_>>(),
        }),
    }
}

fn maps_json(maps: &[ChainMap]) -> Value {
    maps.iter().map(|f| Value::from(f.to_one_based())).collect()
}

fn as_structure(doc: &StructureDocument, what: &str) -> Result<Structure> {
    match &doc.object {
        Object::Structure(s) => Ok(s.clone()),
        other => Err(InputError(format!("{what} must be a structure, found a {}", other.kind_name()))),
    }
}

fn tournament_or(path: &Option<String>, default: Named) -> Result<Tournament> {
    let s = match path {
        Some(p) => as_structure(&load(p)?, "tournament")?,
        None => build_named(default)?,
    };
    Ok(Tournament::new(s)?)
}

fn arg<T: std::str::FromStr>(args: &[String], i: usize, name: &str) -> Result<T> {
    args.get(i)
        .ok_or_else(|| InputError(format!("missing argument {name}")))?
        .parse()
        .map_err(|_| InputError(format!("cannot parse {name} from `{}`", args[i])))
}

fn build(name: &str, args: &[String]) -> Result<StructureDocument> {
    let erst = |n: usize| DocKind::Structure(Some(ClassTag::Erst(n)));
    Ok(match name {
        "chain" => StructureDocument::plain(Chain::new(arg(args, 0, "N")?)?.into()),
        "empty" => StructureDocument::plain(build_empty(&Signature::default(), arg(args, 0, "N")?, false)?.into()),
        "empty-erst" => StructureDocument::new(erst(2), build_empty(&Signature::default(), arg(args, 0, "N")?, true)?.into()),
        "metric-uniform" => StructureDocument::plain(build_metric_uniform(arg(args, 0, "N")?, arg(args, 1, "D")?)?.into()),
        "tensor" => {
            let r = arg(args, 0, "R")?;
            StructureDocument::new(erst(r), build_tensor(r, arg(args, 1, "N")?)?.into())
        }
        "boxtensor" => StructureDocument::plain(build_boxtensor(arg(args, 0, "R")?, arg(args, 1, "N")?)?.into()),
        other => {
            let named: Named = other.parse()?;
            let tag = match named {
                Named::Cycle3 | Named::Cycle4 => ClassTag::Graph,
                _ => ClassTag::Tournament,
            };
            StructureDocument::new(DocKind::Structure(Some(tag)), build_named(named)?.into())
        }
    })
}

fn generator(s: &str) -> Result<Generator> {
    let bad = || InputError(format!("unknown generator `{s}`"));
    Ok(match s.split_once(':') {
        None if s == "chains" => Generator::Chains,
        None if s == "empty-erst" => Generator::EmptyReflexive,
        Some(("metric", d)) => Generator::UniformMetric(d.parse().map_err(|_| bad())?),
        Some(("tensor", r)) => Generator::Tensor(r.parse().map_err(|_| bad())?),
        _ => return Err(bad()),
    })
}

fn arrow_json(report: &dual_ramsey::arrow::ArrowReport) -> Value {
    let (verdict, extra) = match &report.verdict {
        ArrowVerdict::Holds { nodes } => ("holds", json!({"nodes": nodes})),
        ArrowVerdict::Fails { coloring, degenerate } => {
            let keyed: serde_json::Map<String, Value> =
                coloring.iter().enumerate().map(|(i, &c)| ((i + 1).to_string(), Value::from(c + 1))).collect();
            ("fails", json!({"degenerate": degenerate, "coloring": keyed}))
        }
    };
    let mut v = json!({
        "verdict": verdict,
        "k": report.k,
        "hom_ca": report.hom_ca.len(),
        "hom_cb": report.hom_cb,
        "hom_ba": report.hom_ba,
        "morphisms": maps_json(&report.hom_ca),
    });
    v.as_object_mut().unwrap().extend(extra.as_object().unwrap().clone());
    v
}

pub fn run(cli: &Cli) -> Result<Output> {
    let cache = HomCache::new();
    match &cli.command {
        Command::Validate { doc, class } => {
            let text = read_source(doc)?;
            let parsed = match StructureDocument::parse_str(&text) {
                Ok(p) => p,
                // a class violation is a verdict; anything else is malformed input
                Err(e) if e.class_violation => {
                    return Ok(Output::json(json!({"valid": false, "path": e.path, "message": e.message}), false))
                }
                Err(e) => return Err(InputError(format!("{doc}: {e}"))),
            };
            match class {
                None => Ok(Output::json(json!({"valid": true, "kind": parsed.kind.name()}), true)),
                Some(tag) => {
                    let tag: ClassTag = tag.parse()?;
                    match validate(&parsed.object, tag) {
                        Ok(()) => Ok(Output::json(json!({"valid": true, "class": tag.name()}), true)),
                        Err(v) => Ok(Output::json(json!({"valid": false, "class": tag.name(), "message": v.to_string()}), false)),
                    }
                }
            }
        }
        Command::EnumHoms { a, b, kind: k } => {
            let (a, b) = (load(a)?.object, load(b)?.object);
            let homs = enum_morphisms(&a, &b, kind(k)?)?;
            Ok(Output::json(json!({"kind": k, "count": homs.len(), "maps": maps_json(&homs)}), true))
        }
        Command::CheckMap { a, b, f, kind: k } => {
            let (a, b) = (load(a)?.object, load(b)?.object);
            let f = load_map(f, a.size(), b.size())?;
            let v = check_morphism(&a, &b, &f, kind(k)?)?;
            let mut out = verdict_json(&v);
            out.as_object_mut().unwrap().insert("kind".into(), k.clone().into());
            Ok(Output::json(out, v.is_pass()))
        }
        Command::Build { name, args } => Ok(Output::document(&build(name, args)?)),
        Command::Preadjoint { a, u } => {
            let a = as_structure(&load(a)?, "A")?;
            let rho = a.relation_sal(0).len();
            let u = load_map_doc(u)?;
            let u = u.to_map(u.map.len(), rho)?;
            let phi = preadjoint_phi(&a, &u)?;
            let r = a.signature().symbols()[0].arity;
            let tensor = StructureDocument::new(DocKind::Structure(Some(ClassTag::Erst(r))), build_tensor(r, u.dom())?.into());
            let tensor: Value = serde_json::from_str(&tensor.format()).expect("formatted document");
            Ok(Output::json(json!({"tensor": tensor, "phi": MorphismDocument::from_map(&phi).to_value()}), true))
        }
        Command::Functor { pair, dir, x } => {
            let x = load(x)?;
            let out = match (pair, dir, &x.object) {
                (FunctorPair::GraphHgr, Direction::Fwd, Object::Structure(s)) => StructureDocument::plain(graph_to_hypergraph(s)?.into()),
                (FunctorPair::HgrErst, Direction::Fwd, Object::Hypergraph(h)) => {
                    StructureDocument::new(DocKind::Structure(Some(ClassTag::Erst(h.uniformity()))), hypergraph_to_erst(h)?.into())
                }
                (FunctorPair::HgrErst, Direction::Back, Object::Structure(s)) => StructureDocument::plain(erst_to_hypergraph(s)?.into()),
                (FunctorPair::DaggerStar, Direction::Fwd, Object::Structure(s)) => {
                    StructureDocument::new(DocKind::Structure(Some(ClassTag::ThetaErst)), dagger(s)?.into())
                }
                (FunctorPair::DaggerStar, Direction::Back, Object::Structure(s)) => {
                    StructureDocument::new(DocKind::Structure(Some(ClassTag::Reflexive)), star(s)?.into())
                }
                (_, _, other) => return Err(InputError(format!("functor does not apply to a {}", other.kind_name()))),
            };
            Ok(Output::document(&out))
        }
        Command::CheckArrow { c, b, a, k, kind: kd } => {
            let p = ArrowProblem { c: load(c)?.object, b: load(b)?.object, a: load(a)?.object, k: *k, kind: kind(kd)? };
            let report = check_arrow(&p, &options(cli), &cache)?;
            Ok(Output::json(arrow_json(&report), report.verdict.holds()))
        }
        Command::SearchRamsey { b, a, k, kind: kd, generator: g, bound } => {
            let (b, a) = (load(b)?.object, load(a)?.object);
            let out = search_ramsey_object(&b, &a, *k, kind(kd)?, &generator(g)?, *bound, &options(cli), &cache)?;
            Ok(match out {
                SearchOutcome::Found { n, object, report } => {
                    let doc: Value = serde_json::from_str(&StructureDocument::plain(object).format()).expect("formatted document");
                    Output::json(json!({"found": true, "n": n, "object": doc, "hom_ca": report.hom_ca.len()}), true)
                }
                SearchOutcome::Exhausted { bound } => Output::json(json!({"found": false, "bound": bound}), false),
            })
        }
        Command::Tournament(t) => tournament(cli, t, &cache),
        Command::VerifyPaper => {
            let facts = facts::all(&options(cli));
            let ok = facts.iter().all(|f| f.pass);
            let list: Vec<Value> = facts.iter().map(|f| json!({"fact": f.name, "pass": f.pass, "detail": f.detail})).collect();
            Ok(Output::json(json!({"pass": ok, "facts": list}), ok))
        }
    }
}

fn tournament(cli: &Cli, cmd: &TournamentCommand, cache: &HomCache) -> Result<Output> {
    match cmd {
        TournamentCommand::CriticalPairs { s, s2 } => {
            let (s, s2) = (tournament_or(s, Named::TournamentC3)?, tournament_or(s2, Named::TournamentC3Plus)?);
            let pairs: Vec<String> = critical_pairs(&s, &s2).iter().map(|p| p.to_string()).collect();
            Ok(Output::json(json!({"count": pairs.len(), "pairs": pairs}), true))
        }
        TournamentCommand::MatrixScan { s, s2 } => {
            let (s, s2) = (tournament_or(s, Named::TournamentC3)?, tournament_or(s2, Named::TournamentC3Plus)?);
            let (rows, cols) = (s.size(), s2.size());
            let found = matrix_scan(&critical_pairs(&s, &s2), rows, cols)?;
            let matrices: Vec<Value> = found
                .iter()
                .map(|&m| (0..rows).map(|i| (0..cols).map(|j| matrix_entry(m, cols, i, j)).collect::<Vec<_>>()).collect())
                .collect();
            Ok(Output::json(
                json!({"rows": rows, "cols": cols, "scanned": 1u64 << (rows * cols), "found": found.len(), "matrices": matrices}),
                true,
            ))
        }
        TournamentCommand::Siblings { s1, s2, max_n } => {
            let (s1, s2) = (tournament_or(s1, Named::TournamentC3)?, tournament_or(s2, Named::TournamentC3Plus)?);
            Ok(match siblings_witness_search(&s1, &s2, *max_n) {
                Some(t) => {
                    let doc = StructureDocument::new(DocKind::Structure(Some(ClassTag::Tournament)), t.into_structure().into());
                    let doc: Value = serde_json::from_str(&doc.format()).expect("formatted document");
                    Output::json(json!({"found": true, "max_n": max_n, "witness": doc}), true)
                }
                None => Output::json(json!({"found": false, "max_n": max_n}), true),
            })
        }
        TournamentCommand::Counterexample { t, max_homs } => {
            let t = tournament_or(t, Named::Thm7B)?;
            let r = verify_tournament_counterexample(&t, *max_homs, &options(cli), cache)?;
            let rows: Vec<Value> = r
                .rows
                .iter()
                .map(|row| json!({"w": row.w.to_one_based(), "chi_phi": row.chi_phi, "chi_psi": row.chi_psi}))
                .collect();
            Ok(Output::json(
                json!({
                    "completion": r.completion,
                    "phi": r.phi.to_one_based(),
                    "psi": r.psi.to_one_based(),
                    "hom_ta": r.hom_ta.len(),
                    "rows": rows,
                    "all_split": r.all_split,
                    "chi_is_witness": r.chi_is_witness,
                    "degenerate": r.degenerate(),
                    "arrow": arrow_json(&r.arrow)["verdict"],
                    "confirmed": r.confirmed(),
                }),
                r.confirmed(),
            ))
        }
    }
}
