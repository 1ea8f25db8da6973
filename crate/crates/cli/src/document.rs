//! JSON documents for objects and maps.
//!
//! Labels are 1-based. `format` writes relations in lexicographic tuple
//! order with one top-level key per line, so `format ∘ parse` is the
//! identity on its own output.

use std::fmt::{self, Write};

use dual_ramsey::order::{Chain, ChainMap};
use dual_ramsey::structures::{validate, ClassTag, Hypergraph, MetricSpace, Object, Signature, Structure, Symbol};
use serde_json::{Map, Value};

/// A parse failure at a JSON path such as `$.relations.edge[3][1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocError {
    pub path: String,
    pub message: String,
    /// The document is well formed but its object misses the declared class.
    pub class_violation: bool,
}

impl fmt::Display for DocError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

impl std::error::Error for DocError {}

type Result<T> = std::result::Result<T, DocError>;

fn err<T>(path: &str, message: impl Into<String>) -> Result<T> {
    Err(DocError { path: path.to_string(), message: message.into(), class_violation: false })
}

fn violation<T>(path: &str, message: String) -> Result<T> {
    Err(DocError { path: path.to_string(), message, class_violation: true })
}

/// The `kind` a document declares. Structure kinds are class tags checked on
/// parse; `structure` checks nothing beyond shape.
#[derive(Debug, Clone, PartialEq)]
pub enum DocKind {
    Chain,
    Structure(Option<ClassTag>),
    Hypergraph,
    Metric,
}

impl DocKind {
    pub fn name(&self) -> String {
        match self {
            DocKind::Chain => "chain".into(),
            DocKind::Structure(None) => "structure".into(),
            DocKind::Structure(Some(tag)) => tag.name(),
            DocKind::Hypergraph => "hypergraph".into(),
            DocKind::Metric => "metric".into(),
        }
    }

    fn parse(s: &str) -> Option<DocKind> {
        match s {
            "chain" => Some(DocKind::Chain),
            "structure" => Some(DocKind::Structure(None)),
            "hypergraph" => Some(DocKind::Hypergraph),
            "metric" => Some(DocKind::Metric),
            _ => match s.parse::<ClassTag>().ok()? {
                ClassTag::Metric | ClassTag::Hypergraph(_) => None,
                tag => Some(DocKind::Structure(Some(tag))),
            },
        }
    }
}

/// A parsed, validated object with the kind its document declared.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureDocument {
    pub kind: DocKind,
    pub object: Object,
}

impl StructureDocument {
    pub fn new(kind: DocKind, object: Object) -> Self {
        StructureDocument { kind, object }
    }

    /// The least specific kind for an object.
    pub fn plain(object: Object) -> Self {
        let kind = match &object {
            Object::Chain(_) => DocKind::Chain,
            Object::Structure(_) => DocKind::Structure(None),
            Object::Hypergraph(_) => DocKind::Hypergraph,
            Object::Metric(_) => DocKind::Metric,
        };
        StructureDocument { kind, object }
    }

    pub fn parse_str(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| DocError {
            path: format!("line {} column {}", e.line(), e.column()),
            message: e.to_string(),
            class_violation: false,
        })?;
        parse(&value)
    }

    pub fn format(&self) -> String {
        format(self)
    }
}

fn field<'a>(obj: &'a Map<String, Value>, path: &str, key: &str) -> Result<&'a Value> {
    obj.get(key).map_or_else(|| err(path, format!("missing field `{key}`")), Ok)
}

fn as_usize(v: &Value, path: &str) -> Result<usize> {
    v.as_u64().map_or_else(|| err(path, "expected a nonnegative integer"), |n| Ok(n as usize))
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().map_or_else(|| err(path, "expected an array"), Ok)
}

fn label(v: &Value, path: &str, size: usize) -> Result<usize> {
    let x = as_usize(v, path)?;
    if x == 0 || x > size {
        return err(path, format!("label {x} outside 1..={size}"));
    }
    Ok(x - 1)
}

fn tuples(v: &Value, path: &str, size: usize, arity: Option<usize>) -> Result<Vec<Vec<usize>>> {
    as_array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let tp = format!("{path}[{i}]");
            let items = as_array(t, &tp)?;
            if let Some(r) = arity {
                if items.len() != r {
                    return err(&tp, format!("expected {r} entries, found {}", items.len()));
                }
            }
            items.iter().enumerate().map(|(j, x)| label(x, &format!("{tp}[{j}]"), size)).collect()
        })
        .collect()
}

pub fn parse(value: &Value) -> Result<StructureDocument> {
    let root = value.as_object().map_or_else(|| err("$", "expected an object"), Ok)?;
    let kind_name = field(root, "$", "kind")?.as_str().map_or_else(|| err("$.kind", "expected a string"), Ok)?;
    let kind = DocKind::parse(kind_name).map_or_else(|| err("$.kind", format!("unknown kind `{kind_name}`")), Ok)?;
    let size = as_usize(field(root, "$", "size")?, "$.size")?;
    if size == 0 {
        return err("$.size", "size must be at least 1");
    }
    let object = match &kind {
        DocKind::Chain => Object::Chain(Chain::new(size).map_err(|e| DocError { path: "$.size".into(), message: e.to_string(), class_violation: false })?),
        DocKind::Hypergraph => {
            let r = as_usize(field(root, "$", "uniformity")?, "$.uniformity")?;
            let edges = tuples(field(root, "$", "edges")?, "$.edges", size, None)?;
            let h = Hypergraph::new(size, r, edges).map_err(|e| DocError { path: "$.edges".into(), message: e.to_string(), class_violation: false })?;
            if let Err(v) = validate(&h.clone().into(), ClassTag::Hypergraph(r)) {
                return violation("$.edges", v.to_string());
            }
            Object::Hypergraph(h)
        }
        DocKind::Metric => {
            let rows = as_array(field(root, "$", "dist")?, "$.dist")?;
            if rows.len() != size {
                return err("$.dist", format!("expected {size} rows, found {}", rows.len()));
            }
            let mut dist = Vec::with_capacity(size);
            for (i, row) in rows.iter().enumerate() {
                let rp = format!("$.dist[{i}]");
                let row = as_array(row, &rp)?;
                if row.len() != size {
                    return err(&rp, format!("expected {size} entries, found {}", row.len()));
                }
                dist.push(
                    row.iter()
                        .enumerate()
                        .map(|(j, d)| d.as_f64().map_or_else(|| err(&format!("{rp}[{j}]"), "expected a number"), Ok))
                        .collect::<Result<Vec<f64>>>()?,
                );
            }
            let m = MetricSpace::new(dist).map_err(|e| DocError { path: "$.dist".into(), message: e.to_string(), class_violation: false })?;
            Object::Metric(m)
        }
        DocKind::Structure(tag) => {
            let sig_items = as_array(field(root, "$", "signature")?, "$.signature")?;
            let mut symbols = Vec::with_capacity(sig_items.len());
            for (i, s) in sig_items.iter().enumerate() {
                let sp = format!("$.signature[{i}]");
                let s = s.as_object().map_or_else(|| err(&sp, "expected an object"), Ok)?;
                let name = field(s, &sp, "name")?.as_str().map_or_else(|| err(&format!("{sp}.name"), "expected a string"), Ok)?;
                let arity = as_usize(field(s, &sp, "arity")?, &format!("{sp}.arity"))?;
                symbols.push(Symbol { name: name.to_string(), arity });
            }
            let sig = Signature::new(symbols).map_err(|e| DocError { path: "$.signature".into(), message: e.to_string(), class_violation: false })?;
            let rels = field(root, "$", "relations")?.as_object().map_or_else(|| err("$.relations", "expected an object"), Ok)?;
            if let Some(extra) = rels.keys().find(|k| sig.index_of(k).is_none()) {
                return err(&format!("$.relations.{extra}"), "symbol not in the signature");
            }
            let mut relations = Vec::with_capacity(sig.len());
            for s in sig.symbols() {
                let rp = format!("$.relations.{}", s.name);
                let v = rels.get(&s.name).map_or_else(|| err("$.relations", format!("missing relation `{}`", s.name)), Ok)?;
                relations.push(tuples(v, &rp, size, Some(s.arity))?);
            }
            let st = Structure::new(sig, size, relations).map_err(|e| DocError { path: "$.relations".into(), message: e.to_string(), class_violation: false })?;
            if let Some(tag) = tag {
                if let Err(v) = validate(&st.clone().into(), *tag) {
                    return violation("$.relations", format!("not a {tag}: {v}"));
                }
            }
            Object::Structure(st)
        }
    };
    Ok(StructureDocument { kind, object })
}

fn write_tuples<'a>(out: &mut String, tuples: impl IntoIterator<Item = &'a Vec<usize>>) {
    out.push('[');
    for (i, t) in tuples.into_iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push('[');
        for (j, x) in t.iter().enumerate() {
            if j > 0 {
                out.push(',');
            }
            write!(out, "{}", x + 1).unwrap();
        }
        out.push(']');
    }
    out.push(']');
}

pub fn format(doc: &StructureDocument) -> String {
    let mut out = String::new();
    let kind = Value::String(doc.kind.name());
    write!(out, "{{\n  \"kind\": {kind},\n  \"size\": {}", doc.object.size()).unwrap();
    match &doc.object {
        Object::Chain(_) => {}
        Object::Hypergraph(h) => {
            write!(out, ",\n  \"uniformity\": {},\n  \"edges\": ", h.uniformity()).unwrap();
            write_tuples(&mut out, h.edges());
        }
        Object::Metric(m) => {
            let dist = serde_json::to_string(m.matrix()).expect("finite distances");
            write!(out, ",\n  \"dist\": {dist}").unwrap();
        }
        Object::Structure(s) => {
            let sig: Vec<String> = s
                .signature()
                .symbols()
                .iter()
                .map(|sym| format!("{{\"name\":{},\"arity\":{}}}", Value::String(sym.name.clone()), sym.arity))
                .collect();
            write!(out, ",\n  \"signature\": [{}],\n  \"relations\": {{", sig.join(",")).unwrap();
            let mut names: Vec<(usize, &str)> =
                s.signature().symbols().iter().enumerate().map(|(i, sym)| (i, sym.name.as_str())).collect();
            names.sort_by_key(|&(_, n)| n);
            for (k, (i, name)) in names.into_iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                write!(out, "\n    {}: ", Value::String(name.to_string())).unwrap();
                write_tuples(&mut out, s.relation(i));
            }
            out.push_str("\n  }");
        }
    }
    out.push_str("\n}\n");
    out
}

/// `{"map": [...]}` with optional `source` and `target` references.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismDocument {
    pub map: Vec<usize>,
    pub source: Option<String>,
    pub target: Option<String>,
}

impl MorphismDocument {
    pub fn from_map(f: &ChainMap) -> Self {
        MorphismDocument { map: f.to_one_based(), source: None, target: None }
    }

    pub fn parse_str(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| DocError {
            path: format!("line {} column {}", e.line(), e.column()),
            message: e.to_string(),
            class_violation: false,
        })?;
        let root = value.as_object().map_or_else(|| err("$", "expected an object"), Ok)?;
        let map = as_array(field(root, "$", "map")?, "$.map")?
            .iter()
            .enumerate()
            .map(|(i, x)| {
                let p = format!("$.map[{i}]");
                match as_usize(x, &p)? {
                    0 => err(&p, "labels start at 1"),
                    x => Ok(x),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let reference = |key: &str| -> Result<Option<String>> {
            match root.get(key) {
                None => Ok(None),
                Some(Value::String(s)) => Ok(Some(s.clone())),
                Some(_) => err(&format!("$.{key}"), "expected a string"),
            }
        };
        Ok(MorphismDocument { map, source: reference("source")?, target: reference("target")? })
    }

    /// The map between objects of the given sizes.
    pub fn to_map(&self, dom: usize, cod: usize) -> Result<ChainMap> {
        if self.map.len() != dom {
            return err("$.map", format!("expected {dom} images, found {}", self.map.len()));
        }
        if let Some(i) = self.map.iter().position(|&x| x > cod) {
            return err(&format!("$.map[{i}]"), format!("label {} outside 1..={cod}", self.map[i]));
        }
        Ok(ChainMap::from_one_based(cod, &self.map).expect("labels checked"))
    }

    pub fn to_value(&self) -> Value {
        let mut m = Map::new();
        m.insert("map".into(), self.map.clone().into());
        if let Some(s) = &self.source {
            m.insert("source".into(), s.clone().into());
        }
        if let Some(t) = &self.target {
            m.insert("target".into(), t.clone().into());
        }
        Value::Object(m)
    }
}
