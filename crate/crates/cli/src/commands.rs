use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use arity_core::cat::FinCategory;
use arity_core::effects::{
    canonical_store_term, denote_store_term, normalize_store_term, theta_finitary, Exceptions, FinMonad, Nondeterminism,
    Partiality, StateMonad, ThetaError, DEFAULT_STEP_BUDGET,
};
use arity_core::freecat::{
    arity_factorize, enumerate_factorizations, theta_free_category, zigzag_equivalent, ArityFactorization, Graph,
};
use arity_core::globular::{free2_cells, free_nerve, pd_compose, pd_site, segal2_check, shape_name};
use arity_core::kan::{
    delta0_arities, density_check, graph_to_presheaf, lan_functor, nerve_of_probe, presheaf_to_graph, unit_is_iso,
    weighted_colimit, DensityVerdict,
};
use arity_core::operad::{
    monad_iso_check, operad_isomorphism, parse_equation, reverse_operad, strongly_regular, validate_operad,
};
use arity_core::simplicial::{
    categorify_with_flag, delta_category, nerve, segal_check, CategorifyError, SegalFailureKind, TruncSimplicialSet,
};
use serde_json::{json, Value};

use crate::formats::{parse_input, CategoryFile, Document, GraphFile, InputError, SimplicialSetFile};

macro_rules! commands {
    ($($variant:ident => $name:literal),* $(,)?) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq)]
        pub enum Command { $($variant),* }

        impl Command {
            pub const ALL: &'static [Command] = &[$(Command::$variant),*];

            pub fn name(self) -> &'static str {
                match self { $(Command::$variant => $name),* }
            }
        }
    };
}

commands! {
    Validate => "validate",
    Nerve => "nerve",
    Segal => "segal",
    Categorify => "categorify",
    Kan => "kan",
    Density => "density",
    Factorize => "factorize",
    Zigzag => "zigzag",
    PdCompose => "pd-compose",
    Free2 => "free2",
    StoreNormalize => "store-normalize",
    StoreCanonical => "store-canonical",
    Theta => "theta",
    OperadValidate => "operad-validate",
    OperadIso => "operad-iso",
    StronglyRegular => "strongly-regular",
}

impl fmt::Display for Command {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        out.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Command::ALL.iter().copied().find(|c| c.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Command::ALL.iter().map(|c| c.name()).collect();
            format!("unknown command `{s}`; expected one of {}", names.join(", "))
        })
    }
}

/// One invocation: a command, its input files and its bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Manifest {
    pub command: Command,
    pub inputs: Vec<PathBuf>,
    pub bound: Option<usize>,
    pub trunc: Option<usize>,
    pub out: Option<PathBuf>,
}

impl Manifest {
    pub fn new(command: Command, inputs: Vec<PathBuf>) -> Self {
        Manifest { command, inputs, bound: None, trunc: None, out: None }
    }
}

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub report: Value,
}

impl Outcome {
    /// The report as pretty JSON with sorted keys and a trailing newline.
    pub fn render(&self) -> String {
        serde_json::to_string_pretty(&canonical(&self.report)).expect("reports serialize") + "\n"
    }
}

/// Rebuild every object with its keys in sorted order.
pub fn canonical(v: &Value) -> Value {
    match v {
        Value::Object(map) => {
            let sorted: BTreeMap<&String, Value> = map.iter().map(|(k, x)| (k, canonical(x))).collect();
            Value::Object(sorted.into_iter().map(|(k, x)| (k.clone(), x)).collect())
        }
        Value::Array(xs) => Value::Array(xs.iter().map(canonical).collect()),
        other => other.clone(),
    }
}

enum Failure {
    Input(InputError),
    Usage(String),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e)
    }
}

struct Verdict {
    result: Value,
    witness: Option<Value>,
}

fn pass(result: Value) -> Result<Verdict, Failure> {
    Ok(Verdict { result, witness: None })
}

fn verdict(result: Value, witness: Option<Value>) -> Result<Verdict, Failure> {
    Ok(Verdict { result, witness })
}

pub fn run(m: &Manifest) -> Outcome {
    let mut report = json!({
        "command": m.command.name(),
        "inputs": m.inputs.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
        "bound": m.bound,
        "trunc": m.trunc,
    });
    let (code, status) = match dispatch(m) {
        Ok(Verdict { result, witness: None }) => {
            report["result"] = result;
            (EXIT_PASS, "pass")
        }
        Ok(Verdict { result, witness: Some(w) }) => {
            report["result"] = result;
            report["witness"] = w;
            (EXIT_FAIL, "fail")
        }
        Err(Failure::Input(e)) => {
            report["error"] = json!(e.to_string());
            (EXIT_INPUT, "error")
        }
        Err(Failure::Usage(e)) => {
            report["error"] = json!(e);
            (EXIT_INPUT, "error")
        }
    };
    report["status"] = json!(status);
    Outcome { code, report: canonical(&report) }
}

fn single(m: &Manifest, kinds: &[&str]) -> Result<Document, Failure> {
    match m.inputs.as_slice() {
        [path] => Ok(parse_input(path, kinds)?),
        other => Err(Failure::Usage(format!("{} expects exactly one --input, got {}", m.command, other.len()))),
    }
}

fn dispatch(m: &Manifest) -> Result<Verdict, Failure> {
    match m.command {
        Command::Validate => validate(m),
        Command::Nerve => nerve_cmd(m),
        Command::Segal => segal(m),
        Command::Categorify => categorify(m),
        Command::Kan => kan(m),
        Command::Density => density(m),
        Command::Factorize => factorize(m),
        Command::Zigzag => zigzag(m),
        Command::PdCompose => pd_compose_cmd(m),
        Command::Free2 => free2(m),
        Command::StoreNormalize => store_normalize(m),
        Command::StoreCanonical => store_canonical(m),
        Command::Theta => theta(m),
        Command::OperadValidate => operad_validate(m),
        Command::OperadIso => operad_iso(m),
        Command::StronglyRegular => strongly_regular_cmd(m),
    }
}

fn validate(m: &Manifest) -> Result<Verdict, Failure> {
    if m.inputs.is_empty() {
        return Err(Failure::Usage("validate expects at least one --input".into()));
    }
    let mut files = Vec::new();
    for path in &m.inputs {
        let doc = parse_input(path, &[])?;
        files.push(json!({ "path": path.display().to_string(), "kind": doc.kind() }));
    }
    pass(json!({ "files": files }))
}

fn category_of(doc: &Document) -> FinCategory {
    match doc {
        Document::Category(c) => c.to_category().expect("validated"),
        _ => unreachable!("kind checked"),
    }
}

/// A simplicial set from a file, taking nerves of categories at `trunc`.
fn sset_input(m: &Manifest) -> Result<TruncSimplicialSet, Failure> {
    Ok(match single(m, &["simplicial_set", "category"])? {
        Document::SimplicialSet(x) => x.to_sset().expect("validated"),
        doc => nerve(&category_of(&doc), m.trunc.unwrap_or(3)),
    })
}

fn nerve_cmd(m: &Manifest) -> Result<Verdict, Failure> {
    let c = category_of(&single(m, &["category"])?);
    let n = m.trunc.unwrap_or(3);
    let x = nerve(&c, n);
    let levels: Vec<Value> = (0..=n)
        .map(|k| {
            let nd = x.nondegenerate(k);
            json!({
                "level": k,
                "size": x.size(k),
                "nondegenerate": nd.len(),
                "nondegenerate_simplices": nd.iter().map(|&i| x.levels[k][i].clone()).collect::<Vec<_>>(),
            })
        })
        .collect();
    let violations: Vec<String> = x.validate().iter().map(ToString::to_string).collect();
    let result = json!({
        "truncation": n,
        "levels": levels,
        "simplicial_set": Document::SimplicialSet(SimplicialSetFile::from_sset(&x)),
    });
    let witness = violations.first().map(|v| json!({ "violation": v }));
    verdict(result, witness)
}

fn segal(m: &Manifest) -> Result<Verdict, Failure> {
    let x = sset_input(m)?;
    let report = segal_check(&x);
    let result = json!({ "truncation": x.n_max, "holds": report.holds, "vacuous": report.vacuous });
    let witness = report.failure.map(|w| {
        let (kind, elements) = match w.kind {
            SegalFailureKind::NotInjective { first, second } => {
                ("not_injective", vec![x.levels[w.p + w.q][first].clone(), x.levels[w.p + w.q][second].clone()])
            }
            SegalFailureKind::NotSurjective { left, right } => {
                ("not_surjective", vec![x.levels[w.p][left].clone(), x.levels[w.q][right].clone()])
            }
        };
        json!({ "p": w.p, "q": w.q, "kind": kind, "elements": elements, "description": w.describe(&x) })
    });
    verdict(result, witness)
}

fn categorify(m: &Manifest) -> Result<Verdict, Failure> {
    let x = sset_input(m)?;
    match categorify_with_flag(&x) {
        Ok(c) => pass(json!({
            "associativity_certified": c.associativity_certified,
            "category": Document::Category(CategoryFile::from_category(&c.category)),
        })),
        Err(e @ CategorifyError::TruncationTooLow { .. }) => Err(Failure::Usage(e.to_string())),
        Err(e) => {
            let witness = match &e {
                CategorifyError::Segal(w) => {
                    json!({ "reason": e.to_string(), "p": w.p, "q": w.q, "description": w.describe(&x) })
                }
                _ => json!({ "reason": e.to_string() }),
            };
            verdict(json!({ "truncation": x.n_max }), Some(witness))
        }
    }
}

fn kan(m: &Manifest) -> Result<Verdict, Failure> {
    let Document::Kan(k) = single(m, &["kan"])? else { unreachable!() };
    let (i, f) = k.to_kan().expect("validated");
    let (lan, _) = lan_functor(&f, &i).map_err(|e| Failure::Usage(e.to_string()))?;
    let e = &*i.target;
    let values: BTreeMap<String, Value> = (0..e.num_objects())
        .map(|o| (e.object_name(o).to_string(), json!({ "size": lan.size(o), "elements": lan.carriers[o] })))
        .collect();
    let action: BTreeMap<String, Vec<String>> = (0..e.num_arrows())
        .filter(|&v| !e.is_identity(v))
        .map(|v| (e.arrow_name(v).to_string(), lan.action[v].iter().map(|&y| lan.carriers[e.tgt(v)][y].clone()).collect()))
        .collect();
    let fully_faithful = i.is_fully_faithful();
    let iso = unit_is_iso(&f, &i).map_err(|e| Failure::Usage(e.to_string()))?;
    let functorial = lan.check_functoriality().is_empty();
    let result = json!({
        "values": values,
        "action": action,
        "functorial": functorial,
        "fully_faithful": fully_faithful,
        "unit_is_iso": iso,
    });
    let witness = if !functorial {
        Some(json!({ "reason": "the extension is not functorial" }))
    } else if fully_faithful && !iso {
        Some(json!({ "reason": "the functor is fully faithful but the unit is not invertible" }))
    } else {
        None
    };
    verdict(result, witness)
}

fn graph_of(doc: &Document) -> Graph {
    match doc {
        Document::Graph(g) => g.to_graph().expect("validated"),
        _ => unreachable!("kind checked"),
    }
}

fn density(m: &Manifest) -> Result<Verdict, Failure> {
    let g = graph_of(&single(m, &["graph"])?);
    let n = m.trunc.unwrap_or(2);
    let arities = delta0_arities(n);
    let probe = graph_to_presheaf(&g, &arities.site);
    let report = density_check(&arities, &probe, "input");
    let (weight, _) = nerve_of_probe(&arities, &probe);
    let colimit = presheaf_to_graph(&weighted_colimit(&weight, &arities).presheaf);
    let mut result = json!({
        "truncation": n,
        "colimit_sizes": report.colimit_sizes,
        "colimit": Document::Graph(GraphFile::from_graph(&colimit)),
    });
    match report.verdict {
        DensityVerdict::Isomorphism => {
            result["verdict"] = json!("isomorphism");
            pass(result)
        }
        DensityVerdict::Undetermined { site_object, reason } => {
            result["verdict"] = json!("undetermined");
            verdict(result, Some(json!({ "site_object": site_object, "reason": reason })))
        }
    }
}

fn factorization_json(g: &Graph, fac: &ArityFactorization) -> Value {
    json!({
        "n": fac.n,
        "p": fac.p,
        "e": {
            "vertices": fac.e.vertices,
            "edges": fac.e.edges.iter().map(|p| p.edges.clone()).collect::<Vec<_>>(),
        },
        "f": {
            "vertices": fac.f.vertices.iter().map(|&v| g.vertices[v].clone()).collect::<Vec<_>>(),
            "edges": fac.f.edges.iter().map(|&e| g.edges[e].name.clone()).collect::<Vec<_>>(),
        },
    })
}

fn graph_arrow(m: &Manifest) -> Result<(Graph, arity_core::freecat::PathMorphism), Failure> {
    let Document::GraphArrow(a) = single(m, &["graph_arrow"])? else { unreachable!() };
    Ok(a.to_arrow().expect("validated"))
}

fn factorize(m: &Manifest) -> Result<Verdict, Failure> {
    let (g, h) = graph_arrow(m)?;
    let fac = arity_factorize(&g, &h).map_err(|e| Failure::Usage(e.to_string()))?;
    let recomposes = fac.recompose() == h;
    let smaller = (0..fac.p).find(|&p| !enumerate_factorizations(&g, &h, p).is_empty());
    let result = json!({
        "factorization": factorization_json(&g, &fac),
        "recomposes": recomposes,
        "minimal": smaller.is_none(),
    });
    let witness = if !recomposes {
        Some(json!({ "reason": "the factorization does not recompose" }))
    } else {
        smaller.map(|p| json!({ "reason": "a smaller middle arity exists", "p": p }))
    };
    verdict(result, witness)
}

fn zigzag(m: &Manifest) -> Result<Verdict, Failure> {
    let (g, h) = graph_arrow(m)?;
    let canon = arity_factorize(&g, &h).map_err(|e| Failure::Usage(e.to_string()))?;
    let bound = m.bound.unwrap_or(canon.p + 2);
    let mut count = 0;
    let mut per_arity = Vec::new();
    for p in 0..=bound {
        let facs = enumerate_factorizations(&g, &h, p);
        per_arity.push(facs.len());
        for fac in facs {
            count += 1;
            if !zigzag_equivalent(&g, &canon, &fac, bound).is_yes() {
                let result = json!({ "bound": bound, "canonical_p": canon.p, "factorizations": count });
                let witness = json!({ "reason": "not zig-zag connected to the canonical factorization", "factorization": factorization_json(&g, &fac) });
                return verdict(result, Some(witness));
            }
        }
    }
    pass(
        json!({ "bound": bound, "canonical_p": canon.p, "factorizations": count, "per_middle_arity": per_arity, "connected": true }),
    )
}

fn pd_compose_cmd(m: &Manifest) -> Result<Verdict, Failure> {
    let Document::PdComposition(file) = single(m, &["pd_composition"])? else { unreachable!() };
    let (outer, labels) = file.to_parts().expect("validated");
    let composite = pd_compose(&outer, &labels).map_err(|e| Failure::Usage(e.to_string()))?;
    pass(json!({ "composite": composite.heights, "width": composite.width(), "cells": composite.cells() }))
}

fn free2(m: &Manifest) -> Result<Verdict, Failure> {
    let Document::GlobularSet(file) = single(m, &["globular_set"])? else { unreachable!() };
    let g = file.to_globular().expect("validated");
    let bound = m.bound.unwrap_or(2);
    let trunc = m.trunc.unwrap_or(2);
    let mut by_shape: BTreeMap<String, usize> = BTreeMap::new();
    let cells = free2_cells(&g, bound);
    for c in &cells {
        *by_shape.entry(shape_name(&c.shape)).or_default() += 1;
    }
    let site = pd_site(trunc, trunc);
    let x = free_nerve(&g, &site, bound).map_err(|e| Failure::Usage(format!("{e}; raise --bound")))?;
    let mut result = json!({ "bound": bound, "site_cells": trunc, "free_cells": cells.len(), "by_shape": by_shape });
    match segal2_check(&x, &site) {
        Ok(w) => {
            result["segal"] = json!(true);
            result["recovered"] = json!({
                "cells0": w.globular.cells0.len(),
                "cells1": w.globular.cells1.len(),
                "cells2": w.globular.cells2.len(),
            });
            pass(result)
        }
        Err(e) => {
            result["segal"] = json!(false);
            verdict(result, Some(json!({ "reason": e.to_string() })))
        }
    }
}

fn store_normalize(m: &Manifest) -> Result<Verdict, Failure> {
    let Document::StoreTerm(file) = single(m, &["store_term"])? else { unreachable!() };
    let (store, n, t) = file.to_term().expect("validated");
    let budget = m.bound.unwrap_or(DEFAULT_STEP_BUDGET);
    let mut result = json!({ "term": t.to_string(), "depth": t.depth(), "budget": budget });
    match normalize_store_term(&t, store, n, budget) {
        Ok(nf) => {
            let same = denote_store_term(&nf, store, n).ok() == denote_store_term(&t, store, n).ok();
            result["normal_form"] = json!(nf.to_string());
            result["denotation_preserved"] = json!(same);
            verdict(result, (!same).then(|| json!({ "reason": "normal form has a different denotation" })))
        }
        Err(e) => verdict(result, Some(json!({ "reason": e.to_string() }))),
    }
}

fn store_canonical(m: &Manifest) -> Result<Verdict, Failure> {
    let doc = single(m, &["store_term", "store_map"])?;
    let (store, n, f, term) = match doc {
        Document::StoreTerm(file) => {
            let (store, n, t) = file.to_term().expect("validated");
            let f = denote_store_term(&t, store, n).expect("checked term");
            (store, n, f, Some(t))
        }
        Document::StoreMap(file) => {
            let (store, n, f) = file.to_map().expect("validated");
            (store, n, f, None)
        }
        _ => unreachable!(),
    };
    let canon = canonical_store_term(&f, store);
    let mut result = json!({
        "canonical": canon.to_string(),
        "denotation": f.iter().map(|&(s, x)| [s, x]).collect::<Vec<_>>(),
    });
    let Some(t) = term else { return pass(result) };
    let budget = m.bound.unwrap_or(DEFAULT_STEP_BUDGET);
    let normal = normalize_store_term(&t, store, n, budget);
    let normal_canon = normalize_store_term(&canon, store, n, budget);
    match (normal, normal_canon) {
        (Ok(a), Ok(b)) => {
            let agree = a == b;
            result["normal_form"] = json!(a.to_string());
            result["normalizer_agrees"] = json!(agree);
            let witness = (!agree).then(|| json!({ "reason": "normal forms of the term and its canonical form differ", "canonical_normal_form": b.to_string() }));
            verdict(result, witness)
        }
        (Err(e), _) | (_, Err(e)) => verdict(result, Some(json!({ "reason": e.to_string() }))),
    }
}

fn theta_json(c: &FinCategory) -> Value {
    let n = c.num_objects();
    let homs: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| c.hom(a, b).len()).collect()).collect();
    json!({ "objects": c.objects(), "arrows": c.num_arrows(), "hom_sizes": homs, "valid": c.is_valid() })
}

fn theta_of<M: FinMonad>(t: &M, bound: usize) -> Result<FinCategory, Failure> {
    theta_finitary(t, bound, 1 << 16).map_err(|e: ThetaError| Failure::Usage(e.to_string()))
}

fn theta(m: &Manifest) -> Result<Verdict, Failure> {
    let Document::Monad(file) = single(m, &["monad"])? else { unreachable!() };
    let bound = m.bound.unwrap_or(2);
    let (c, delta) = match file.name.as_str() {
        "free_category" => {
            let c = theta_free_category(bound);
            let same = c.same_presentation(&delta_category(bound));
            (c, Some(same))
        }
        "state" => (theta_of(&StateMonad { states: file.param("states", 2) }, bound)?, None),
        "partiality" => (theta_of(&Partiality, bound)?, None),
        "nondeterminism" => (theta_of(&Nondeterminism, bound)?, None),
        "exceptions" => (theta_of(&Exceptions { errors: file.param("errors", 1) }, bound)?, None),
        _ => unreachable!("validated"),
    };
    let mut result = theta_json(&c);
    result["monad"] = json!(file.name);
    result["bound"] = json!(bound);
    let witness = if !c.is_valid() {
        Some(json!({ "reason": "not a category", "violation": c.validate().first().map(ToString::to_string) }))
    } else if delta == Some(false) {
        Some(json!({ "reason": "differs from the simplex category" }))
    } else {
        None
    };
    if let Some(same) = delta {
        result["equals_delta"] = json!(same);
    }
    verdict(result, witness)
}

fn operad_input(m: &Manifest) -> Result<arity_core::operad::Operad, Failure> {
    let Document::Operad(file) = single(m, &["operad"])? else { unreachable!() };
    Ok(file.to_operad().expect("validated"))
}

fn operad_validate(m: &Manifest) -> Result<Verdict, Failure> {
    let c = operad_input(m)?;
    let r = validate_operad(&c);
    let sizes: Vec<usize> = (0..=c.max_arity).map(|n| c.size(n)).collect();
    let result = json!({
        "sizes": sizes,
        "identity_checked": r.identity_checked,
        "associativity_checked": r.associativity_checked,
        "valid": r.is_valid(),
    });
    let witness = (!r.is_valid())
        .then(|| json!({ "identity_violations": r.identity_violations, "associativity_violations": r.associativity_violations }));
    verdict(result, witness)
}

fn operad_iso(m: &Manifest) -> Result<Verdict, Failure> {
    let c = operad_input(m)?;
    let r = validate_operad(&c);
    if !r.is_valid() {
        let witness = json!({ "reason": "not an operad", "identity_violations": r.identity_violations, "associativity_violations": r.associativity_violations });
        return verdict(json!({ "valid": false }), Some(witness));
    }
    let bound = m.bound.unwrap_or(c.max_arity);
    let sizes: Vec<usize> = (0..=m.trunc.unwrap_or(2)).collect();
    let iso = monad_iso_check(&c, &sizes, bound);
    let rev = reverse_operad(&c);
    let result = json!({
        "valid": true,
        "bound": bound,
        "sizes": sizes,
        "monad_iso": iso.holds,
        "checked": iso.checked,
        "reverse_equals_operad": rev == c,
        "reverse_isomorphic_as_operad": operad_isomorphism(&c, &rev).is_some(),
    });
    verdict(result, iso.failure.map(|f| json!({ "reason": f })))
}

fn strongly_regular_cmd(m: &Manifest) -> Result<Verdict, Failure> {
    let Document::Equations(file) = single(m, &["equations"])? else { unreachable!() };
    let rows: Vec<Value> = file
        .equations
        .iter()
        .map(|src| {
            let eq = parse_equation(src).expect("validated");
            json!({
                "equation": src,
                "left_variables": eq.left.variables(),
                "right_variables": eq.right.variables(),
                "strongly_regular": strongly_regular(&eq),
            })
        })
        .collect();
    pass(json!({ "equations": rows }))
}
