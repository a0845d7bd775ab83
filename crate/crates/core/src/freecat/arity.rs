use std::collections::{HashMap, VecDeque};

use super::graph::{paths_of_length, Graph, GraphMorphism, Path, PathError, PathMorphism};

/// `i₀[n] → T i₀[p] → T G`: a factorization of an arrow `i₀[n] → TG`
/// through a filiform middle object.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ArityFactorization {
    pub n: usize,
    pub p: usize,
    /// Into `T i₀[p]`: vertex images and per-edge subpaths.
    pub e: PathMorphism,
    /// `i₀[p] → G`.
    pub f: GraphMorphism,
}

impl ArityFactorization {
    /// `T f ∘ e`.
    pub fn recompose(&self) -> PathMorphism {
        PathMorphism {
            vertices: self.e.vertices.iter().map(|&v| self.f.vertices[v]).collect(),
            edges: self.e.edges.iter().map(|p| self.f.map_path(p)).collect(),
        }
    }

    pub fn check(&self, g: &Graph) -> Result<(), PathError> {
        let middle = Graph::linear_quiver(self.p);
        self.e.check(&Graph::linear_quiver(self.n), &middle)?;
        if !self.f.is_valid(&middle, g) {
            return Err(PathError::Shape("f is not a graph morphism".into()));
        }
        Ok(())
    }
}

/// The canonical factorization: with `q_i` the length of the image of edge
/// `i`, the middle is `i₀[q₀+⋯+q_{n-1}]`, vertex `i` goes to the partial sum
/// of the first `i` lengths and `f` walks the concatenated path.
pub fn arity_factorize(g: &Graph, arrow: &PathMorphism) -> Result<ArityFactorization, PathError> {
    let n = arrow.edges.len();
    arrow.check(&Graph::linear_quiver(n), g)?;
    let mut offsets = vec![0];
    for p in &arrow.edges {
        offsets.push(offsets.last().unwrap() + p.len());
    }
    let p = offsets[n];
    let e = PathMorphism {
        vertices: offsets.clone(),
        edges: (0..n).map(|i| Path { start: offsets[i], edges: (offsets[i]..offsets[i + 1]).collect() }).collect(),
    };
    let mut fv = vec![arrow.vertices[0]];
    let mut fe = Vec::with_capacity(p);
    for path in &arrow.edges {
        for &edge in &path.edges {
            fe.push(edge);
            fv.push(g.tgt(edge));
        }
    }
    Ok(ArityFactorization { n, p, e, f: GraphMorphism { vertices: fv, edges: fe } })
}

/// Every factorization of `arrow` through `i₀[p]`: `e` is determined by a
/// monotone vertex map `[n] → [p]`, `f` by a length-`p` path of `g`.
pub fn enumerate_factorizations(g: &Graph, arrow: &PathMorphism, p: usize) -> Vec<ArityFactorization> {
    let n = arrow.edges.len();
    let mut out = Vec::new();
    let fs = paths_of_length(g, p);
    for vmap in crate::simplicial::enumerate_monotone(n, p) {
        let e = PathMorphism {
            vertices: vmap.values.clone(),
            edges: (0..n)
                .map(|i| Path { start: vmap.values[i], edges: (vmap.values[i]..vmap.values[i + 1]).collect() })
                .collect(),
        };
        for path in &fs {
            let f = GraphMorphism { vertices: path.vertices(g), edges: path.edges.clone() };
            let fact = ArityFactorization { n, p, e: e.clone(), f };
            if fact.recompose() == *arrow {
                out.push(fact);
            }
        }
    }
    out
}

/// Outcome of a zig-zag search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZigzagVerdict {
    /// Connected by a chain of this many mediating steps (0 for equal).
    Yes {
        steps: usize,
    },
    /// A single shift `u` mediates; `forward` means from `a` to `b`.
    YesByDirectMediator {
        forward: bool,
        shift: usize,
    },
    NoWithinBound {
        precondition_violated: bool,
    },
}

impl ZigzagVerdict {
    pub fn is_yes(&self) -> bool {
        !matches!(self, ZigzagVerdict::NoWithinBound { .. })
    }
}

/// A shift `u = (i ↦ i+k): [p_a] → [p_b]` with `e_b = T u ∘ e_a` and
/// `f_a = f_b ∘ u`.
pub fn direct_mediator(a: &ArityFactorization, b: &ArityFactorization) -> Option<usize> {
    if a.p > b.p || a.n != b.n {
        return None;
    }
    (0..=b.p - a.p).find(|&k| {
        let e_ok = a.e.vertices.iter().zip(&b.e.vertices).all(|(&x, &y)| x + k == y)
            && a.e
                .edges
                .iter()
                .zip(&b.e.edges)
                .all(|(pa, pb)| pa.start + k == pb.start && pa.edges.iter().map(|&x| x + k).eq(pb.edges.iter().copied()));
        let f_ok =
            (0..=a.p).all(|j| a.f.vertices[j] == b.f.vertices[j + k]) && (0..a.p).all(|j| a.f.edges[j] == b.f.edges[j + k]);
        e_ok && f_ok
    })
}

/// Default middle-arity bound for [`zigzag_equivalent`].
pub fn default_zigzag_bound(a: &ArityFactorization, b: &ArityFactorization) -> usize {
    a.p.max(b.p) + 2
}

/// Are `a` and `b` connected by a zig-zag of mediating shifts through
/// factorizations with middle arity at most `bound`?
pub fn zigzag_equivalent(g: &Graph, a: &ArityFactorization, b: &ArityFactorization, bound: usize) -> ZigzagVerdict {
    let target = a.recompose();
    if target != b.recompose() {
        return ZigzagVerdict::NoWithinBound { precondition_violated: true };
    }
    if a == b {
        return ZigzagVerdict::Yes { steps: 0 };
    }
    if let Some(k) = direct_mediator(a, b) {
        return ZigzagVerdict::YesByDirectMediator { forward: true, shift: k };
    }
    if let Some(k) = direct_mediator(b, a) {
        return ZigzagVerdict::YesByDirectMediator { forward: false, shift: k };
    }
    let mut nodes: Vec<ArityFactorization> = Vec::new();
    for p in 0..=bound {
        nodes.extend(enumerate_factorizations(g, &target, p));
    }
    let index: HashMap<&ArityFactorization, usize> = nodes.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let (Some(&start), Some(&goal)) = (index.get(a), index.get(b)) else {
        return ZigzagVerdict::NoWithinBound { precondition_violated: false };
    };
    let mut dist = vec![usize::MAX; nodes.len()];
    dist[start] = 0;
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        if x == goal {
            return ZigzagVerdict::Yes { steps: dist[x] };
        }
        for y in 0..nodes.len() {
            if dist[y] == usize::MAX
                && (direct_mediator(&nodes[x], &nodes[y]).is_some() || direct_mediator(&nodes[y], &nodes[x]).is_some())
            {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    ZigzagVerdict::NoWithinBound { precondition_violated: false }
}

/// Failure of the factorization property on a specific arrow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationFailure {
    pub arrow: PathMorphism,
    pub reason: String,
}

/// Check on every arrow `i₀[n] → TG` with `n ≤ max_n` and edge images of
/// length `≤ maxlen` that the canonical factorization recomposes, has
/// minimal middle arity, and that every factorization with middle arity
/// within the default bound is zig-zag connected to it.
///
/// With `domain_one_only`, only `n = 1` is examined.
pub fn verify_factorization_property(
    g: &Graph,
    max_n: usize,
    maxlen: usize,
    domain_one_only: bool,
) -> Result<usize, FactorizationFailure> {
    let range: Vec<usize> = if domain_one_only { vec![1] } else { (0..=max_n).collect() };
    let mut checked = 0;
    for n in range {
        for arrow in super::graph::enumerate_path_morphisms(&Graph::linear_quiver(n), g, maxlen) {
            let fail = |reason: String| FactorizationFailure { arrow: arrow.clone(), reason };
            let canon = arity_factorize(g, &arrow).map_err(|e| fail(e.to_string()))?;
            if canon.recompose() != arrow {
                return Err(fail("canonical factorization does not recompose".into()));
            }
            for p in 0..canon.p {
                if !enumerate_factorizations(g, &arrow, p).is_empty() {
                    return Err(fail(format!("factors through smaller arity {p}")));
                }
            }
            let bound = canon.p + 2;
            for p in canon.p..=bound {
                for other in enumerate_factorizations(g, &arrow, p) {
                    if !zigzag_equivalent(g, &canon, &other, bound).is_yes() {
                        return Err(fail(format!("factorization through {p} not connected")));
                    }
                }
            }
            checked += 1;
        }
    }
    Ok(checked)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `0→4, 4→5, 0→1, 1→2, 2→3`.
    fn worked_graph() -> Graph {
        Graph::from_indices(&["0", "1", "2", "3", "4", "5"], &[("a", 0, 4), ("b", 4, 5), ("c", 0, 1), ("d", 1, 2), ("e", 2, 3)])
    }

    #[test]
    fn worked_example_has_middle_arity_three() {
        let g = worked_graph();
        let arrow = PathMorphism {
            vertices: vec![0, 2, 3],
            edges: vec![Path { start: 0, edges: vec![2, 3] }, Path { start: 2, edges: vec![4] }],
        };
        let fact = arity_factorize(&g, &arrow).unwrap();
        assert_eq!(fact.p, 3);
        assert_eq!(fact.e.vertices, vec![0, 2, 3]);
        assert_eq!(fact.f.vertices, vec![0, 1, 2, 3]);
        assert_eq!(fact.recompose(), arrow);
        for p in 0..3 {
            assert!(enumerate_factorizations(&g, &arrow, p).is_empty());
        }
    }

    #[test]
    fn unit_length_images_give_identity_shape() {
        let g = worked_graph();
        let arrow = PathMorphism {
            vertices: vec![0, 1, 2],
            edges: vec![Path { start: 0, edges: vec![2] }, Path { start: 1, edges: vec![3] }],
        };
        let fact = arity_factorize(&g, &arrow).unwrap();
        assert_eq!(fact.p, 2);
        assert_eq!(fact.e.vertices, vec![0, 1, 2]);
    }

    #[test]
    fn empty_images_give_a_point() {
        let g = worked_graph();
        let arrow = PathMorphism { vertices: vec![4, 4], edges: vec![Path::empty(4)] };
        let fact = arity_factorize(&g, &arrow).unwrap();
        assert_eq!(fact.p, 0);
        assert_eq!(fact.f.vertices, vec![4]);
        assert_eq!(fact.recompose(), arrow);
    }

    #[test]
    fn zigzag_cases() {
        let g = worked_graph();
        let arrow = PathMorphism { vertices: vec![0, 1], edges: vec![Path { start: 0, edges: vec![2] }] };
        let canon = arity_factorize(&g, &arrow).unwrap();
        assert_eq!(zigzag_equivalent(&g, &canon, &canon, 3), ZigzagVerdict::Yes { steps: 0 });
        // the same arrow through [2], extending f by the edge 1→2
        let wider = ArityFactorization {
            n: 1,
            p: 2,
            e: canon.e.clone(),
            f: GraphMorphism { vertices: vec![0, 1, 2], edges: vec![2, 3] },
        };
        assert_eq!(wider.recompose(), arrow);
        assert_eq!(direct_mediator(&canon, &wider), Some(0));
        assert_eq!(
            zigzag_equivalent(&g, &canon, &wider, default_zigzag_bound(&canon, &wider)),
            ZigzagVerdict::YesByDirectMediator { forward: true, shift: 0 }
        );
        let other =
            arity_factorize(&g, &PathMorphism { vertices: vec![0, 4], edges: vec![Path { start: 0, edges: vec![0] }] }).unwrap();
        for bound in 0..4 {
            assert_eq!(
                zigzag_equivalent(&g, &canon, &other, bound),
                ZigzagVerdict::NoWithinBound { precondition_violated: true }
            );
        }
    }

    #[test]
    fn two_step_zigzag_through_a_common_extension() {
        // both extend the canonical one-edge factorization in different ways
        let g = worked_graph();
        let arrow = PathMorphism { vertices: vec![1, 2], edges: vec![Path { start: 1, edges: vec![3] }] };
        let left = ArityFactorization {
            n: 1,
            p: 2,
            e: PathMorphism { vertices: vec![1, 2], edges: vec![Path { start: 1, edges: vec![1] }] },
            f: GraphMorphism { vertices: vec![0, 1, 2], edges: vec![2, 3] },
        };
        let right = ArityFactorization {
            n: 1,
            p: 2,
            e: PathMorphism { vertices: vec![0, 1], edges: vec![Path { start: 0, edges: vec![0] }] },
            f: GraphMorphism { vertices: vec![1, 2, 3], edges: vec![3, 4] },
        };
        assert_eq!(left.recompose(), arrow);
        assert_eq!(right.recompose(), arrow);
        assert_eq!(zigzag_equivalent(&g, &left, &right, 2), ZigzagVerdict::Yes { steps: 2 });
    }

    #[test]
    fn factorization_property_on_small_graphs() {
        let g = worked_graph();
        assert!(verify_factorization_property(&g, 2, 3, false).unwrap() > 0);
        assert!(verify_factorization_property(&g, 4, 3, true).unwrap() > 0);
    }
}
