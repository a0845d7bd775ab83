//! JSON input files. Every file is one object with a `"kind"` tag; sets are
//! arrays of strings and maps are objects keyed by name.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use arity_core::cat::{ArrowData, FinCategory, FinFunctor, SetFunctor};
use arity_core::effects::{Store, StoreTerm};
use arity_core::freecat::{Edge, Graph, Path, PathMorphism};
use arity_core::globular::{ColumnLabel, GlobularSet2, Pd2};
use arity_core::operad::{operad_entries, Operad};
use arity_core::simplicial::TruncSimplicialSet;
use schemars::JsonSchema;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InputError {
    #[error("{origin}: cannot read: {message}")]
    Io { origin: String, message: String },
    #[error("{origin}:{line}:{column}: {message}")]
    Json { origin: String, line: usize, column: usize, message: String },
    #[error("{origin}: expected kind {expected}, found {found}")]
    Kind { origin: String, expected: String, found: String },
    #[error("{origin}: at {at}: {message}")]
    Invalid { origin: String, at: String, message: String },
}

/// A validation failure before the file name is attached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invalid {
    pub at: String,
    pub message: String,
}

fn invalid(at: impl Into<String>, message: impl Into<String>) -> Invalid {
    Invalid { at: at.into(), message: message.into() }
}

impl Invalid {
    pub fn within(self, origin: &str) -> InputError {
        InputError::Invalid { origin: origin.into(), at: self.at, message: self.message }
    }

    fn nested(self, prefix: &str) -> Invalid {
        Invalid { at: format!("{prefix}.{}", self.at), message: self.message }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, JsonSchema)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Document {
    Category(CategoryFile),
    Graph(GraphFile),
    SimplicialSet(SimplicialSetFile),
    GlobularSet(GlobularSetFile),
    StoreTerm(StoreTermFile),
    StoreMap(StoreMapFile),
    Operad(OperadFile),
    Equations(EquationsFile),
    Kan(KanFile),
    GraphArrow(GraphArrowFile),
    PdComposition(PdCompositionFile),
    Monad(MonadFile),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Category(_) => "category",
            Document::Graph(_) => "graph",
            Document::SimplicialSet(_) => "simplicial_set",
            Document::GlobularSet(_) => "globular_set",
            Document::StoreTerm(_) => "store_term",
            Document::StoreMap(_) => "store_map",
            Document::Operad(_) => "operad",
            Document::Equations(_) => "equations",
            Document::Kan(_) => "kan",
            Document::GraphArrow(_) => "graph_arrow",
            Document::PdComposition(_) => "pd_composition",
            Document::Monad(_) => "monad",
        }
    }

    /// Full validation of the contents, beyond the JSON shape.
    pub fn check(&self) -> Result<(), Invalid> {
        match self {
            Document::Category(c) => c.to_category().map(drop),
            Document::Graph(g) => g.to_graph().map(drop),
            Document::SimplicialSet(x) => x.to_sset().map(drop),
            Document::GlobularSet(x) => x.to_globular().map(drop),
            Document::StoreTerm(t) => t.to_term().map(drop),
            Document::StoreMap(m) => m.to_map().map(drop),
            Document::Operad(o) => o.to_operad().map(drop),
            Document::Equations(e) => e.check(),
            Document::Kan(k) => k.to_kan().map(drop),
            Document::GraphArrow(a) => a.to_arrow().map(drop),
            Document::PdComposition(p) => p.to_parts().map(drop),
            Document::Monad(m) => m.check(),
        }
    }
}

/// Parse in two stages so that syntax errors carry a line and column and
/// shape errors a JSON path.
pub fn parse_document(text: &str, origin: &str) -> Result<Document, InputError> {
    let mut value: serde_json::Value = serde_json::from_str(text).map_err(|e| InputError::Json {
        origin: origin.into(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let kind = match value.as_object_mut().and_then(|o| o.remove("kind")) {
        Some(serde_json::Value::String(k)) => k,
        _ => return Err(invalid("kind", "a string \"kind\" field is required").within(origin)),
    };
    fn body<T: serde::de::DeserializeOwned>(value: serde_json::Value) -> Result<T, Invalid> {
        serde_path_to_error::deserialize(value).map_err(|e| {
            let at = e.path().to_string();
            invalid(if at == "." { "top level".into() } else { at }, e.into_inner().to_string())
        })
    }
    let doc = match kind.as_str() {
        "category" => body(value).map(Document::Category),
        "graph" => body(value).map(Document::Graph),
        "simplicial_set" => body(value).map(Document::SimplicialSet),
        "globular_set" => body(value).map(Document::GlobularSet),
        "store_term" => body(value).map(Document::StoreTerm),
        "store_map" => body(value).map(Document::StoreMap),
        "operad" => body(value).map(Document::Operad),
        "equations" => body(value).map(Document::Equations),
        "kan" => body(value).map(Document::Kan),
        "graph_arrow" => body(value).map(Document::GraphArrow),
        "pd_composition" => body(value).map(Document::PdComposition),
        "monad" => body(value).map(Document::Monad),
        other => Err(invalid("kind", format!("unknown kind `{other}`"))),
    }
    .map_err(|e| e.within(origin))?;
    doc.check().map_err(|e| e.within(origin))?;
    Ok(doc)
}

/// Read and validate a file, requiring one of `kinds` when non-empty.
pub fn parse_input(path: &std::path::Path, kinds: &[&str]) -> Result<Document, InputError> {
    let origin = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| InputError::Io { origin: origin.clone(), message: e.to_string() })?;
    let doc = parse_document(&text, &origin)?;
    if !kinds.is_empty() && !kinds.contains(&doc.kind()) {
        return Err(InputError::Kind { origin, expected: kinds.join(" or "), found: doc.kind().into() });
    }
    Ok(doc)
}

pub fn to_json(doc: &Document) -> String {
    serde_json::to_string_pretty(doc).expect("documents serialize") + "\n"
}

fn lookup(index: &HashMap<&str, usize>, name: &str, at: String, what: &str) -> Result<usize, Invalid> {
    index.get(name).copied().ok_or_else(|| invalid(at, format!("unknown {what} `{name}`")))
}

fn name_index<'a>(names: impl IntoIterator<Item = &'a String>, at: &str, what: &str) -> Result<HashMap<&'a str, usize>, Invalid> {
    let mut index = HashMap::new();
    for (i, n) in names.into_iter().enumerate() {
        if index.insert(n.as_str(), i).is_some() {
            return Err(invalid(format!("{at}[{i}]"), format!("duplicate {what} `{n}`")));
        }
    }
    Ok(index)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct NamedArrow {
    pub name: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct CategoryFile {
    pub objects: Vec<String>,
    pub arrows: Vec<NamedArrow>,
    /// Object name to the name of its identity arrow.
    pub identities: BTreeMap<String, String>,
    /// Triples `[f, g, h]`: `f` then `g` is `h`. Every composable pair
    /// appears exactly once.
    pub composition: Vec<[String; 3]>,
}

impl CategoryFile {
    pub fn to_category(&self) -> Result<FinCategory, Invalid> {
        let objects = name_index(&self.objects, "objects", "object")?;
        let arrows = name_index(self.arrows.iter().map(|a| &a.name), "arrows", "arrow")?;
        let mut data = Vec::with_capacity(self.arrows.len());
        for (k, a) in self.arrows.iter().enumerate() {
            let src = lookup(&objects, &a.src, format!("arrows[{k}].src"), "object")?;
            let tgt = lookup(&objects, &a.tgt, format!("arrows[{k}].tgt"), "object")?;
            data.push(ArrowData { name: a.name.clone(), src, tgt });
        }
        let mut identities = vec![usize::MAX; self.objects.len()];
        for (o, a) in &self.identities {
            let at = format!("identities.{o}");
            let obj = lookup(&objects, o, at.clone(), "object")?;
            identities[obj] = lookup(&arrows, a, at, "arrow")?;
        }
        if let Some(o) = identities.iter().position(|&a| a == usize::MAX) {
            return Err(invalid("identities", format!("object `{}` has no identity", self.objects[o])));
        }
        let mut comp = HashMap::new();
        for (k, [f, g, h]) in self.composition.iter().enumerate() {
            let at = format!("composition[{k}]");
            let key = (lookup(&arrows, f, at.clone(), "arrow")?, lookup(&arrows, g, at.clone(), "arrow")?);
            let value = lookup(&arrows, h, at.clone(), "arrow")?;
            if comp.insert(key, value).is_some() {
                return Err(invalid(at, format!("composite of `{f}` and `{g}` given twice")));
            }
        }
        let c = FinCategory::from_parts(self.objects.clone(), data, identities, comp);
        if let Some(v) = c.validate().first() {
            return Err(invalid("composition", v.to_string()));
        }
        Ok(c)
    }

    pub fn from_category(c: &FinCategory) -> Self {
        CategoryFile {
            objects: c.objects().to_vec(),
            arrows: c
                .arrows()
                .iter()
                .map(|a| NamedArrow { name: a.name.clone(), src: c.object_name(a.src).into(), tgt: c.object_name(a.tgt).into() })
                .collect(),
            identities: (0..c.num_objects()).map(|o| (c.object_name(o).into(), c.arrow_name(c.identity(o)).into())).collect(),
            composition: c
                .sorted_composites()
                .into_iter()
                .map(|(f, g, h)| [c.arrow_name(f).into(), c.arrow_name(g).into(), c.arrow_name(h).into()])
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub vertices: Vec<String>,
    pub edges: Vec<NamedArrow>,
}

impl GraphFile {
    pub fn to_graph(&self) -> Result<Graph, Invalid> {
        let vertices = name_index(&self.vertices, "vertices", "vertex")?;
        name_index(self.edges.iter().map(|e| &e.name), "edges", "edge")?;
        let mut edges = Vec::with_capacity(self.edges.len());
        for (k, e) in self.edges.iter().enumerate() {
            let src = lookup(&vertices, &e.src, format!("edges[{k}].src"), "vertex")?;
            let tgt = lookup(&vertices, &e.tgt, format!("edges[{k}].tgt"), "vertex")?;
            edges.push(Edge { name: e.name.clone(), src, tgt });
        }
        Ok(Graph::new(self.vertices.clone(), edges))
    }

    pub fn from_graph(g: &Graph) -> Self {
        GraphFile {
            vertices: g.vertices.clone(),
            edges: g
                .edges
                .iter()
                .map(|e| NamedArrow { name: e.name.clone(), src: g.vertices[e.src].clone(), tgt: g.vertices[e.tgt].clone() })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct SimplicialSetFile {
    pub n_max: usize,
    pub levels: Vec<Vec<String>>,
    /// `faces[n][i][x]`: index of `d_i x` in level `n-1`; `faces[0]` is empty.
    pub faces: Vec<Vec<Vec<usize>>>,
    /// `degens[n][j][x]`: index of `s_j x` in level `n+1`, for `n < n_max`.
    pub degens: Vec<Vec<Vec<usize>>>,
}

impl SimplicialSetFile {
    pub fn to_sset(&self) -> Result<TruncSimplicialSet, Invalid> {
        let n = self.n_max;
        if self.levels.len() != n + 1 {
            return Err(invalid("levels", format!("{} levels expected, {} given", n + 1, self.levels.len())));
        }
        if self.faces.len() != n + 1 {
            return Err(invalid("faces", format!("{} face levels expected, {} given", n + 1, self.faces.len())));
        }
        if self.degens.len() != n {
            return Err(invalid("degens", format!("{n} degeneracy levels expected, {} given", self.degens.len())));
        }
        for (k, level) in self.levels.iter().enumerate() {
            name_index(level, &format!("levels[{k}]"), "simplex")?;
        }
        let x =
            TruncSimplicialSet { n_max: n, levels: self.levels.clone(), faces: self.faces.clone(), degens: self.degens.clone() };
        if let Some(v) = x.validate().first() {
            return Err(invalid(format!("level {}", v.level), format!("simplicial identity violated: {v}")));
        }
        Ok(x)
    }

    pub fn from_sset(x: &TruncSimplicialSet) -> Self {
        SimplicialSetFile { n_max: x.n_max, levels: x.levels.clone(), faces: x.faces.clone(), degens: x.degens.clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct GlobularSetFile {
    pub cells0: Vec<String>,
    /// 1-cells with source and target 0-cells.
    pub cells1: Vec<NamedArrow>,
    /// 2-cells with source and target 1-cells.
    pub cells2: Vec<NamedArrow>,
}

impl GlobularSetFile {
    pub fn to_globular(&self) -> Result<GlobularSet2, Invalid> {
        let c0 = name_index(&self.cells0, "cells0", "0-cell")?;
        let c1 = name_index(self.cells1.iter().map(|c| &c.name), "cells1", "1-cell")?;
        name_index(self.cells2.iter().map(|c| &c.name), "cells2", "2-cell")?;
        let mut g = GlobularSet2 { cells0: self.cells0.clone(), ..Default::default() };
        for (k, c) in self.cells1.iter().enumerate() {
            g.cells1.push(c.name.clone());
            g.s1.push(lookup(&c0, &c.src, format!("cells1[{k}].src"), "0-cell")?);
            g.t1.push(lookup(&c0, &c.tgt, format!("cells1[{k}].tgt"), "0-cell")?);
        }
        for (k, c) in self.cells2.iter().enumerate() {
            g.cells2.push(c.name.clone());
            g.s2.push(lookup(&c1, &c.src, format!("cells2[{k}].src"), "1-cell")?);
            g.t2.push(lookup(&c1, &c.tgt, format!("cells2[{k}].tgt"), "1-cell")?);
        }
        if let Some(v) = g.validate().first() {
            return Err(invalid("cells2", v.clone()));
        }
        Ok(g)
    }

    pub fn from_globular(g: &GlobularSet2) -> Self {
        let arrow = |names: &[String], lower: &[String], s: &[usize], t: &[usize]| {
            names
                .iter()
                .enumerate()
                .map(|(k, n)| NamedArrow { name: n.clone(), src: lower[s[k]].clone(), tgt: lower[t[k]].clone() })
                .collect()
        };
        GlobularSetFile {
            cells0: g.cells0.clone(),
            cells1: arrow(&g.cells1, &g.cells0, &g.s1, &g.t1),
            cells2: arrow(&g.cells2, &g.cells1, &g.s2, &g.t2),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct StoreTermFile {
    pub locations: usize,
    pub values: usize,
    pub variables: usize,
    /// For example `update_0,1(lookup_0(x0,x1))`.
    pub term: String,
}

impl StoreTermFile {
    pub fn to_term(&self) -> Result<(Store, usize, StoreTerm), Invalid> {
        let store = store_of(self.locations, self.values)?;
        let t = StoreTerm::parse(&self.term).map_err(|e| invalid("term", e.to_string()))?;
        t.check(store, self.variables).map_err(|e| invalid("term", e.to_string()))?;
        Ok((store, self.variables, t))
    }
}

fn store_of(locations: usize, values: usize) -> Result<Store, Invalid> {
    if values == 0 {
        return Err(invalid("values", "at least one value is required"));
    }
    let store = Store::new(locations, values);
    (values as u128)
        .checked_pow(locations as u32)
        .filter(|&s| s <= 1 << 16)
        .ok_or_else(|| invalid("locations", "more than 65536 states"))?;
    Ok(store)
}

/// A function `S → S × [n]`: `map[s] = [s', x]`, states numbered in base
/// `values` with location 0 as the least significant digit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct StoreMapFile {
    pub locations: usize,
    pub values: usize,
    pub variables: usize,
    pub map: Vec<[usize; 2]>,
}

impl StoreMapFile {
    pub fn to_map(&self) -> Result<(Store, usize, Vec<(usize, usize)>), Invalid> {
        let store = store_of(self.locations, self.values)?;
        let states = store.num_states();
        if self.map.len() != states {
            return Err(invalid("map", format!("{states} entries expected, {} given", self.map.len())));
        }
        for (k, &[s, x]) in self.map.iter().enumerate() {
            if s >= states {
                return Err(invalid(format!("map[{k}]"), format!("state {s} out of range")));
            }
            if x >= self.variables {
                return Err(invalid(format!("map[{k}]"), format!("variable {x} out of range")));
            }
        }
        Ok((store, self.variables, self.map.iter().map(|&[s, x]| (s, x)).collect()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct OperadEntry {
    pub outer: String,
    pub inner: Vec<String>,
    pub result: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct OperadFile {
    pub max_arity: usize,
    /// `operations[n]` names the operations of arity `n`.
    pub operations: Vec<Vec<String>>,
    pub identity: String,
    /// Every composite whose arity is at most `max_arity`.
    pub composition: Vec<OperadEntry>,
}

impl OperadFile {
    pub fn to_operad(&self) -> Result<Operad, Invalid> {
        let identity = self.operations.get(1).and_then(|ops| ops.iter().position(|n| *n == self.identity));
        let identity = identity.ok_or_else(|| invalid("identity", format!("`{}` is not a unary operation", self.identity)))?;
        let entries: Vec<(String, Vec<String>, String)> =
            self.composition.iter().map(|e| (e.outer.clone(), e.inner.clone(), e.result.clone())).collect();
        Operad::from_entries(self.max_arity, self.operations.clone(), identity, &entries)
            .map_err(|e| invalid("composition", e.to_string()))
    }

    pub fn from_operad(c: &Operad) -> Self {
        OperadFile {
            max_arity: c.max_arity,
            operations: c.names.clone(),
            identity: c.name(c.id()).into(),
            composition: operad_entries(c)
                .into_iter()
                .map(|(outer, inner, result)| OperadEntry { outer, inner, result })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct EquationsFile {
    pub equations: Vec<String>,
}

impl EquationsFile {
    fn check(&self) -> Result<(), Invalid> {
        for (k, e) in self.equations.iter().enumerate() {
            arity_core::operad::parse_equation(e).map_err(|err| invalid(format!("equations[{k}]"), err.to_string()))?;
        }
        Ok(())
    }
}

/// A functor between finite categories by names; identity arrows may be
/// left out.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct FunctorSpec {
    pub objects: BTreeMap<String, String>,
    #[serde(default)]
    pub arrows: BTreeMap<String, String>,
}

/// A covariant functor into finite sets; `action[f][k]` names the image of
/// the `k`-th element of the source carrier. Identities may be left out.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct SetFunctorSpec {
    pub carriers: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub action: BTreeMap<String, Vec<String>>,
}

/// `Lan_i F` for `i: C → E` and `F: C → Set`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct KanFile {
    pub source: CategoryFile,
    pub target: CategoryFile,
    pub functor: FunctorSpec,
    pub diagram: SetFunctorSpec,
}

impl KanFile {
    pub fn to_kan(&self) -> Result<(FinFunctor, SetFunctor), Invalid> {
        let c = Arc::new(self.source.to_category().map_err(|e| e.nested("source"))?);
        let e = Arc::new(self.target.to_category().map_err(|e| e.nested("target"))?);
        let i = functor_from_spec(&self.functor, c.clone(), e).map_err(|e| e.nested("functor"))?;
        let f = set_functor_from_spec(&self.diagram, c).map_err(|e| e.nested("diagram"))?;
        Ok((i, f))
    }
}

pub fn functor_from_spec(spec: &FunctorSpec, source: Arc<FinCategory>, target: Arc<FinCategory>) -> Result<FinFunctor, Invalid> {
    let mut objects = Vec::with_capacity(source.num_objects());
    for o in source.objects() {
        let image = spec.objects.get(o).ok_or_else(|| invalid(format!("objects.{o}"), "missing"))?;
        objects
            .push(target.object_id(image).ok_or_else(|| invalid(format!("objects.{o}"), format!("unknown object `{image}`")))?);
    }
    for name in spec.objects.keys() {
        source.object_id(name).ok_or_else(|| invalid(format!("objects.{name}"), "not an object of the source"))?;
    }
    for name in spec.arrows.keys() {
        source.arrow_id(name).ok_or_else(|| invalid(format!("arrows.{name}"), "not an arrow of the source"))?;
    }
    let mut arrows = Vec::with_capacity(source.num_arrows());
    for f in 0..source.num_arrows() {
        let name = source.arrow_name(f);
        let image = match spec.arrows.get(name) {
            Some(image) => {
                target.arrow_id(image).ok_or_else(|| invalid(format!("arrows.{name}"), format!("unknown arrow `{image}`")))?
            }
            None if source.is_identity(f) => target.identity(objects[source.src(f)]),
            None => return Err(invalid(format!("arrows.{name}"), "missing")),
        };
        arrows.push(image);
    }
    let i = FinFunctor { source, target, objects, arrows };
    if let Some(v) = i.validate().first() {
        return Err(invalid("arrows", v.to_string()));
    }
    Ok(i)
}

pub fn set_functor_from_spec(spec: &SetFunctorSpec, base: Arc<FinCategory>) -> Result<SetFunctor, Invalid> {
    let mut carriers = Vec::with_capacity(base.num_objects());
    for o in base.objects() {
        let carrier = spec.carriers.get(o).ok_or_else(|| invalid(format!("carriers.{o}"), "missing"))?;
        name_index(carrier, &format!("carriers.{o}"), "element")?;
        carriers.push(carrier.clone());
    }
    for name in spec.carriers.keys() {
        base.object_id(name).ok_or_else(|| invalid(format!("carriers.{name}"), "not an object"))?;
    }
    for name in spec.action.keys() {
        base.arrow_id(name).ok_or_else(|| invalid(format!("action.{name}"), "not an arrow"))?;
    }
    let mut action = Vec::with_capacity(base.num_arrows());
    for f in 0..base.num_arrows() {
        let (s, t) = (base.src(f), base.tgt(f));
        let name = base.arrow_name(f);
        let row = match spec.action.get(name) {
            Some(images) => {
                if images.len() != carriers[s].len() {
                    return Err(invalid(
                        format!("action.{name}"),
                        format!("{} images expected, {} given", carriers[s].len(), images.len()),
                    ));
                }
                let index = name_index(&carriers[t], "", "element").expect("checked above");
                images.iter().map(|y| lookup(&index, y, format!("action.{name}"), "element")).collect::<Result<Vec<_>, _>>()?
            }
            None if base.is_identity(f) => (0..carriers[s].len()).collect(),
            None => return Err(invalid(format!("action.{name}"), "missing")),
        };
        action.push(row);
    }
    let f = SetFunctor { base, carriers, action };
    if let Some(v) = f.check_functoriality().first() {
        return Err(invalid("action", v.to_string()));
    }
    Ok(f)
}

/// An arrow `i₀[n] → TG`: `n + 1` vertex names and `n` paths of edge names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct GraphArrowFile {
    pub graph: GraphFile,
    pub vertices: Vec<String>,
    pub edges: Vec<Vec<String>>,
}

impl GraphArrowFile {
    pub fn to_arrow(&self) -> Result<(Graph, PathMorphism), Invalid> {
        let g = self.graph.to_graph().map_err(|e| e.nested("graph"))?;
        if self.vertices.len() != self.edges.len() + 1 {
            return Err(invalid(
                "vertices",
                format!("{} vertices expected, {} given", self.edges.len() + 1, self.vertices.len()),
            ));
        }
        let vindex: HashMap<&str, usize> = g.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let eindex: HashMap<&str, usize> = g.edges.iter().enumerate().map(|(i, e)| (e.name.as_str(), i)).collect();
        let vertices = self
            .vertices
            .iter()
            .enumerate()
            .map(|(k, v)| lookup(&vindex, v, format!("vertices[{k}]"), "vertex"))
            .collect::<Result<Vec<_>, _>>()?;
        let mut edges = Vec::with_capacity(self.edges.len());
        for (k, names) in self.edges.iter().enumerate() {
            let ids = names.iter().map(|e| lookup(&eindex, e, format!("edges[{k}]"), "edge")).collect::<Result<Vec<_>, _>>()?;
            edges.push(Path { start: vertices[k], edges: ids });
        }
        let h = PathMorphism { vertices, edges };
        h.check(&Graph::linear_quiver(self.edges.len()), &g).map_err(|e| invalid("edges", e.to_string()))?;
        Ok((g, h))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum LabelSpec {
    /// One diagram (as column heights) per 2-cell, bottom to top.
    Cells(Vec<Vec<usize>>),
    /// A bare column replaced by a path of this length.
    Bare(usize),
}

/// Substitution into a pasting diagram, all diagrams as column heights.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct PdCompositionFile {
    pub outer: Vec<usize>,
    pub labels: Vec<LabelSpec>,
}

impl PdCompositionFile {
    pub fn to_parts(&self) -> Result<(Pd2, Vec<ColumnLabel>), Invalid> {
        let labels = self
            .labels
            .iter()
            .map(|l| match l {
                LabelSpec::Cells(ps) => ColumnLabel::Cells(ps.iter().map(|h| Pd2::new(h.clone())).collect()),
                LabelSpec::Bare(w) => ColumnLabel::Bare(*w),
            })
            .collect();
        Ok((Pd2::new(self.outer.clone()), labels))
    }
}

pub const MONADS: [&str; 5] = ["free_category", "state", "partiality", "nondeterminism", "exceptions"];

/// A monad by name; `params` holds `states` for state and `errors` for
/// exceptions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct MonadFile {
    pub name: String,
    #[serde(default)]
    pub params: BTreeMap<String, usize>,
}

impl MonadFile {
    fn check(&self) -> Result<(), Invalid> {
        let allowed: &[&str] = match self.name.as_str() {
            "state" => &["states"],
            "exceptions" => &["errors"],
            n if MONADS.contains(&n) => &[],
            n => return Err(invalid("name", format!("unknown monad `{n}`; expected one of {}", MONADS.join(", ")))),
        };
        match self.params.keys().find(|k| !allowed.contains(&k.as_str())) {
            Some(k) => Err(invalid(format!("params.{k}"), format!("not a parameter of {}", self.name))),
            None => Ok(()),
        }
    }

    pub fn param(&self, key: &str, default: usize) -> usize {
        self.params.get(key).copied().unwrap_or(default)
    }
}

/// JSON Schema for every input file, one alternative per `kind`.
pub fn input_schema() -> String {
    let schema = schemars::schema_for!(Document);
    serde_json::to_string_pretty(&schema).expect("schemas serialize") + "\n"
}
