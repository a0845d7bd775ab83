use std::collections::HashMap;

use super::graph::{eta_t, free_paths, mu_flatten, t_eta, Edge, Graph, Path, PathOfPaths};
use crate::cat::{ArrowData, ArrowId, FinCategory};

/// The graph of a category, identities included as edges.
pub fn underlying_graph(c: &FinCategory) -> Graph {
    Graph {
        vertices: c.objects().to_vec(),
        edges: c.arrows().iter().map(|a| Edge { name: a.name.clone(), src: a.src, tgt: a.tgt }).collect(),
    }
}

/// The algebra map `TG → G` of a category: compose the path; the empty
/// path goes to the identity.
pub fn compose_path(c: &FinCategory, p: &Path) -> ArrowId {
    p.edges.iter().fold(c.identity(p.start), |acc, &e| c.compose(acc, e).expect("path is composable"))
}

/// Every way to cut a sequence of `len` items into `parts` consecutive,
/// possibly empty, blocks.
fn cuts(len: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![len]];
    }
    let mut out = Vec::new();
    for first in 0..=len {
        for mut rest in cuts(len - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn split(p: &Path, lengths: &[usize], g: &Graph) -> PathOfPaths {
    let mut at = 0;
    let steps = lengths
        .iter()
        .map(|&l| {
            let s = p.subpath(at, l, g);
            at += l;
            s
        })
        .collect();
    PathOfPaths { start: p.start, steps }
}

/// All elements of `TTG` with total length `≤ maxlen` and at most
/// `max_steps` steps, grouped by the path they flatten to.
pub fn nestings(g: &Graph, maxlen: usize, max_steps: usize) -> Vec<PathOfPaths> {
    let mut out = Vec::new();
    for p in free_paths(g, maxlen) {
        for parts in 1..=max_steps {
            for c in cuts(p.len(), parts) {
                out.push(split(&p, &c, g));
            }
        }
    }
    out
}

/// A violated algebra or monad law, with the offending element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawViolation {
    pub law: &'static str,
    pub element: String,
}

impl std::fmt::Display for LawViolation {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(out, "{} fails on {}", self.law, self.element)
    }
}

/// `μ` associativity and both unit laws for the free category monad, on
/// all paths of length `≤ maxlen` and all two-level nestings with at most
/// three pieces per level. Returns the number of instances checked.
pub fn check_free_category_monad(g: &Graph, maxlen: usize) -> Result<usize, LawViolation> {
    let mut checked = 0;
    for p in free_paths(g, maxlen) {
        let bad = |law| LawViolation { law, element: format!("{:?} from {}", p.edges, p.start) };
        if mu_flatten(g, &t_eta(g, &p)).ok().as_ref() != Some(&p) {
            return Err(bad("μ ∘ Tη = 1"));
        }
        if mu_flatten(g, &eta_t(&p)).ok().as_ref() != Some(&p) {
            return Err(bad("μ ∘ ηT = 1"));
        }
        checked += 2;
        for outer in 1..=3 {
            for c in cuts(p.len(), outer) {
                let middle = split(&p, &c, g);
                // each middle step cut again into at most 3 pieces
                let mut choices: Vec<Vec<PathOfPaths>> = Vec::new();
                for step in &middle.steps {
                    let mut opts = Vec::new();
                    for inner in 1..=3 {
                        for ci in cuts(step.len(), inner) {
                            opts.push(split(step, &ci, g));
                        }
                    }
                    choices.push(opts);
                }
                for pick in product(&choices) {
                    // μ ∘ Tμ: flatten each inner nesting, then the outer
                    let tmu = PathOfPaths {
                        start: p.start,
                        steps: pick.iter().map(|n| mu_flatten(g, n).expect("consecutive")).collect(),
                    };
                    let left = mu_flatten(g, &tmu).expect("consecutive");
                    // μ ∘ μT: concatenate the outer level first
                    let mut concat = PathOfPaths { start: p.start, steps: Vec::new() };
                    for n in &pick {
                        concat.steps.extend(n.steps.iter().cloned());
                    }
                    let right = mu_flatten(g, &concat).expect("consecutive");
                    if left != right {
                        return Err(LawViolation { law: "μ ∘ Tμ = μ ∘ μT", element: format!("{pick:?}") });
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(checked)
}

fn product<T: Clone>(choices: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = vec![Vec::new()];
    for opts in choices {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                opts.iter().map(move |o| {
                    let mut v = prefix.clone();
                    v.push(o.clone());
                    v
                })
            })
            .collect();
    }
    out
}

/// Check that `h: TG → G` (given on paths up to `maxlen`) is identity on
/// vertices, satisfies `h ∘ η = 1` and `h ∘ μ = h ∘ Th` on nestings within
/// the bound.
pub fn check_path_algebra(g: &Graph, h: &dyn Fn(&Path) -> usize, maxlen: usize) -> Result<usize, LawViolation> {
    let mut checked = 0;
    for p in free_paths(g, maxlen) {
        let e = h(&p);
        if g.src(e) != p.start || g.tgt(e) != p.end(g) {
            return Err(LawViolation { law: "h preserves endpoints", element: format!("{:?}", p) });
        }
        checked += 1;
    }
    for e in 0..g.num_edges() {
        if h(&Path::single(g, e)) != e {
            return Err(LawViolation { law: "h ∘ η = 1", element: g.edges[e].name.clone() });
        }
        checked += 1;
    }
    for n in nestings(g, maxlen, 3) {
        let flat = mu_flatten(g, &n).expect("consecutive");
        let applied = Path { start: n.start, edges: n.steps.iter().map(h).collect() };
        if applied.len() <= maxlen && h(&flat) != h(&applied) {
            return Err(LawViolation { law: "h ∘ μ = h ∘ Th", element: format!("{n:?}") });
        }
        checked += 1;
    }
    Ok(checked)
}

/// The category presented by an algebra on a graph: identities are images
/// of empty paths, composites images of length-two paths.
pub fn category_from_algebra(g: &Graph, h: &dyn Fn(&Path) -> usize) -> FinCategory {
    let arrows = g.edges.iter().map(|e| ArrowData { name: e.name.clone(), src: e.src, tgt: e.tgt }).collect();
    let identities = (0..g.num_vertices()).map(|v| h(&Path::empty(v))).collect();
    let mut comp = HashMap::new();
    for f in 0..g.num_edges() {
        for k in g.out_edges(g.tgt(f)) {
            comp.insert((f, k), h(&Path { start: g.src(f), edges: vec![f, k] }));
        }
    }
    FinCategory::from_parts(g.vertices.clone(), arrows, identities, comp)
}
