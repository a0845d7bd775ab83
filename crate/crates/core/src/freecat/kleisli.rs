use std::collections::HashMap;

use super::graph::{enumerate_path_morphisms, Graph, Path, PathMorphism};
use crate::cat::{ArrowData, FinCategory};
use crate::simplicial::{monotone_name, MonotoneMap};

/// `Θ_T([m],[n])`: graph morphisms `i₀[m] → T i₀[n]`. The target is
/// acyclic, so every path has length at most `n`.
pub fn kleisli_arity_hom(m: usize, n: usize) -> Vec<PathMorphism> {
    enumerate_path_morphisms(&Graph::linear_quiver(m), &Graph::linear_quiver(n), n)
}

/// Kleisli composite `μ ∘ T g ∘ f`: first `f: i₀[m] → T i₀[n]`, then
/// `g: i₀[n] → T i₀[p]`.
pub fn kleisli_compose(f: &PathMorphism, g: &PathMorphism) -> PathMorphism {
    PathMorphism {
        vertices: f.vertices.iter().map(|&v| g.vertices[v]).collect(),
        edges: f
            .edges
            .iter()
            .map(|p| Path {
                start: g.vertices[p.start],
                edges: p.edges.iter().flat_map(|&e| g.edges[e].edges.iter().copied()).collect(),
            })
            .collect(),
    }
}

/// The Kleisli identity `η`: each edge to its length-one path.
pub fn kleisli_identity(n: usize) -> PathMorphism {
    PathMorphism { vertices: (0..=n).collect(), edges: (0..n).map(|k| Path { start: k, edges: vec![k] }).collect() }
}

/// A morphism into a filiform free category is determined by where it
/// sends vertices.
pub fn to_monotone(m: usize, n: usize, h: &PathMorphism) -> MonotoneMap {
    MonotoneMap::new(m, n, h.vertices.clone()).expect("paths in i₀[n] only move forward")
}

/// `Θ_T` for the free category monad, objects `[0] … [N]`. Arrows carry the
/// same names as in [`crate::simplicial::delta_category`].
pub fn theta_free_category(n_max: usize) -> FinCategory {
    let mut homs = Vec::new();
    for m in 0..=n_max {
        for n in 0..=n_max {
            for h in kleisli_arity_hom(m, n) {
                homs.push((m, n, h));
            }
        }
    }
    let index: HashMap<(usize, usize, &PathMorphism), usize> =
        homs.iter().enumerate().map(|(i, (m, n, h))| ((*m, *n, h), i)).collect();
    let arrows =
        homs.iter().map(|(m, n, h)| ArrowData { name: monotone_name(&to_monotone(*m, *n, h)), src: *m, tgt: *n }).collect();
    let identities = (0..=n_max).map(|n| index[&(n, n, &kleisli_identity(n))]).collect();
    let mut comp = HashMap::new();
    for (i, (m, n, f)) in homs.iter().enumerate() {
        for (j, (n2, p, g)) in homs.iter().enumerate() {
            if n == n2 {
                comp.insert((i, j), index[&(*m, *p, &kleisli_compose(f, g))]);
            }
        }
    }
    FinCategory::from_parts((0..=n_max).map(|n| format!("[{n}]")).collect(), arrows, identities, comp)
}
