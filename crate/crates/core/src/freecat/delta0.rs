use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::graph::{paths_of_length, Edge, Graph, Path};
use crate::cat::{ArrowData, ArrowId, FinCategory, FinFunctor, SetFunctor};
use crate::simplicial::{delta_category, monotone_name, MonotoneMap, TruncSimplicialSet};

/// Name of the shift `i ↦ i+k: [m] → [n]` in [`delta0`].
pub fn shift_name(m: usize, n: usize, k: usize) -> String {
    format!("u{m},{n}+{k}")
}

/// `Δ₀` truncated at `n_max`: objects `[0] … [N]`, arrows the shifts
/// `i ↦ i+k`.
pub fn delta0(n_max: usize) -> FinCategory {
    let objects = (0..=n_max).map(|n| format!("[{n}]")).collect();
    let mut shifts = Vec::new();
    for n in 0..=n_max {
        for m in 0..=n {
            for k in 0..=n - m {
                shifts.push((m, n, k));
            }
        }
    }
    let index: HashMap<(usize, usize, usize), ArrowId> = shifts.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let arrows = shifts.iter().map(|&(m, n, k)| ArrowData { name: shift_name(m, n, k), src: m, tgt: n }).collect();
    let identities = (0..=n_max).map(|n| index[&(n, n, 0)]).collect();
    let mut comp = HashMap::new();
    for (i, &(m, n, k)) in shifts.iter().enumerate() {
        for (j, &(n2, p, k2)) in shifts.iter().enumerate() {
            if n == n2 {
                comp.insert((i, j), index[&(m, p, k + k2)]);
            }
        }
    }
    FinCategory::from_parts(objects, arrows, identities, comp)
}

/// The inclusion `l: Δ₀ → Δ`.
pub fn delta0_inclusion(n_max: usize) -> FinFunctor {
    let source = Arc::new(delta0(n_max));
    let target = Arc::new(delta_category(n_max));
    let arrows = source
        .arrows()
        .iter()
        .map(|a| {
            let (m, n) = (a.src, a.tgt);
            let k = parse_shift(&a.name).expect("shift arrow");
            target.arrow_id(&monotone_name(&MonotoneMap::shift(m, n, k))).expect("present in Δ")
        })
        .collect();
    FinFunctor { objects: (0..=n_max).collect(), arrows, source, target }
}

fn parse_shift(name: &str) -> Option<usize> {
    name.rsplit_once('+')?.1.parse().ok()
}

/// `[n] ↦ Graph(i₀[n], G)`: level `n` holds the paths of length exactly
/// `n`; a shift `u: [m] → [n]` acts by selecting the subpath at offset `k`.
pub fn graph_nerve(g: &Graph, n_max: usize) -> SetFunctor {
    let base = Arc::new(delta0(n_max).opposite());
    let levels: Vec<Vec<Path>> = (0..=n_max).map(|n| paths_of_length(g, n)).collect();
    let index: Vec<HashMap<&Path, usize>> = levels.iter().map(|l| l.iter().enumerate().map(|(i, p)| (p, i)).collect()).collect();
    let action = base
        .arrows()
        .iter()
        .map(|a| {
            // in the opposite, src = [n] and tgt = [m]
            let (n, m) = (a.src, a.tgt);
            let k = parse_shift(&a.name).expect("shift arrow");
            levels[n].iter().map(|p| index[m][&p.subpath(k, m, g)]).collect()
        })
        .collect();
    let carriers = levels
        .iter()
        .enumerate()
        .map(|(n, l)| l.iter().map(|p| if n == 0 { g.vertices[p.start].clone() } else { p.label(g) }).collect())
        .collect();
    SetFunctor { base, carriers, action }
}

/// `l*X`: a truncated simplicial set restricted along `Δ₀ → Δ`.
pub fn restrict_to_delta0(x: &TruncSimplicialSet) -> SetFunctor {
    let base = Arc::new(delta0(x.n_max).opposite());
    let action = base
        .arrows()
        .iter()
        .map(|a| {
            let (n, m) = (a.src, a.tgt);
            let k = parse_shift(&a.name).expect("shift arrow");
            x.eval(&MonotoneMap::shift(m, n, k)).expect("within truncation")
        })
        .collect();
    SetFunctor { base, carriers: x.levels.clone(), action }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RepresentabilityFailure {
    /// The presheaf is not over a truncated `Δ₀^op` of level at least 1.
    Shape,
    /// Two elements of level `level` have the same spine.
    NotInjective { level: usize, a: usize, b: usize },
    /// A path of the candidate graph has no element of level `level`.
    NotSurjective { level: usize, path: Path },
}

impl fmt::Display for RepresentabilityFailure {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Shape => write!(out, "not a truncated Δ₀ presheaf"),
            Self::NotInjective { level, a, b } => {
                write!(out, "level {level}: elements {a} and {b} have the same spine")
            }
            Self::NotSurjective { level, path } => {
                write!(out, "level {level}: path {:?} from {} has no element", path.edges, path.start)
            }
        }
    }
}

/// A graph `G` with level-wise bijections `X_n ≅ Graph(i₀[n], G)`.
#[derive(Debug, Clone)]
pub struct Representation {
    pub graph: Graph,
    /// `isos[n][x]` is the index of the image of `x` in `paths_of_length(G, n)`.
    pub isos: Vec<Vec<usize>>,
}

/// Read a candidate graph off levels 0 and 1 (sources and targets are the
/// two shifts `[0] → [1]`) and check each level is in bijection with the
/// paths of that length, sent by spines.
pub fn segal_representability_check(x: &SetFunctor) -> Result<Representation, RepresentabilityFailure> {
    let c = &*x.base;
    let n_max = c.num_objects().checked_sub(1).ok_or(RepresentabilityFailure::Shape)?;
    if n_max < 1 {
        return Err(RepresentabilityFailure::Shape);
    }
    let arrow = |m: usize, n: usize, k: usize| c.arrow_id(&shift_name(m, n, k)).ok_or(RepresentabilityFailure::Shape);
    let (src, tgt) = (arrow(0, 1, 0)?, arrow(0, 1, 1)?);
    let graph = Graph {
        vertices: x.carriers[0].clone(),
        edges: (0..x.size(1))
            .map(|e| Edge { name: x.carriers[1][e].clone(), src: x.apply(src, e), tgt: x.apply(tgt, e) })
            .collect(),
    };
    let mut isos = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let paths = paths_of_length(&graph, n);
        let index: HashMap<&Path, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let spines: Vec<usize> = (0..n).map(|k| arrow(1, n, k)).collect::<Result<_, _>>()?;
        let start = arrow(0, n, 0)?;
        let mut image = vec![usize::MAX; x.size(n)];
        let mut hit: Vec<Option<usize>> = vec![None; paths.len()];
        for (el, slot) in image.iter_mut().enumerate() {
            let p = Path { start: x.apply(start, el), edges: spines.iter().map(|&u| x.apply(u, el)).collect() };
            let Some(&i) = index.get(&p) else {
                // spine edges do not chain up: functoriality already fails
                return Err(RepresentabilityFailure::Shape);
            };
            if let Some(other) = hit[i] {
                return Err(RepresentabilityFailure::NotInjective { level: n, a: other, b: el });
            }
            hit[i] = Some(el);
            *slot = i;
        }
        if let Some(i) = hit.iter().position(Option::is_none) {
            return Err(RepresentabilityFailure::NotSurjective { level: n, path: paths[i].clone() });
        }
        isos.push(image);
    }
    Ok(Representation { graph, isos })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::examples::*;
    use crate::freecat::underlying_graph;
    use crate::simplicial::nerve;

    #[test]
    fn delta0_and_inclusion_are_valid() {
        for n in 0..=4 {
            assert!(delta0(n).is_valid());
            let l = delta0_inclusion(n);
            assert!(l.validate().is_empty());
        }
        // shifts [m] → [n] number n-m+1
        assert_eq!(delta0(3).num_arrows(), 4 + 3 + 2 + 1 + 3 + 2 + 1 + 2 + 1 + 1);
    }

    #[test]
    fn graph_nerve_levels() {
        let q = Graph::linear_quiver(2);
        let x = graph_nerve(&q, 3);
        assert!(x.check_functoriality().is_empty());
        assert_eq!((x.size(0), x.size(1), x.size(2), x.size(3)), (3, 2, 1, 0));
        let looped = Graph::from_indices(&["v"], &[("l", 0, 0)]);
        let y = graph_nerve(&looped, 4);
        assert!((0..=4).all(|n| y.size(n) == 1));
    }

    #[test]
    fn nerves_of_categories_are_representable() {
        for c in [arrow_category(), linear_order(3), discrete(2)] {
            let x = restrict_to_delta0(&nerve(&c, 3));
            assert!(x.check_functoriality().is_empty());
            let rep = segal_representability_check(&x).unwrap();
            let g = underlying_graph(&c);
            assert_eq!(rep.graph.num_vertices(), g.num_vertices());
            assert_eq!(rep.graph.num_edges(), g.num_edges());
        }
    }

    #[test]
    fn graph_nerve_round_trip() {
        let g = Graph::from_indices(&["a", "b", "c"], &[("f", 0, 1), ("g", 1, 2), ("h", 0, 1), ("k", 2, 0)]);
        let rep = segal_representability_check(&graph_nerve(&g, 3)).unwrap();
        // edges come back in path order, so compare as labelled edge sets
        let edges = |h: &Graph| {
            let mut es: Vec<_> =
                h.edges.iter().map(|e| (e.name.clone(), h.vertices[e.src].clone(), h.vertices[e.tgt].clone())).collect();
            es.sort();
            es
        };
        assert_eq!(rep.graph.vertices, g.vertices);
        assert_eq!(edges(&rep.graph), edges(&g));
    }

    #[test]
    fn deleting_a_level_two_element_fails_there() {
        let c = arrow_category();
        let mut x = restrict_to_delta0(&nerve(&c, 2));
        // drop the last composable pair; at N = 2 only the identity lands in level 2
        let victim = x.size(2) - 1;
        x.carriers[2].pop();
        for a in 0..x.base.num_arrows() {
            if x.base.src(a) == 2 {
                x.action[a].remove(victim);
            }
        }
        match segal_representability_check(&x) {
            Err(RepresentabilityFailure::NotSurjective { level, .. }) => assert_eq!(level, 2),
            other => panic!("unexpected {other:?}"),
        }
    }
}
