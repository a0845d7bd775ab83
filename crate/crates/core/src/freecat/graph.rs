use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

/// A directed multigraph: a presheaf on `V ⇇ E`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    pub vertices: Vec<String>,
    pub edges: Vec<Edge>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathError {
    #[error("edge {edge} does not start at vertex {expected}")]
    Discontinuous { edge: usize, expected: usize },
    #[error("vertex {0} out of range")]
    BadVertex(usize),
    #[error("edge {0} out of range")]
    BadEdge(usize),
    #[error("inner path {index} starts at {found}, expected {expected}")]
    InnerMismatch { index: usize, found: usize, expected: usize },
    #[error("morphism shape mismatch: {0}")]
    Shape(String),
}

impl Graph {
    pub fn new(vertices: Vec<String>, edges: Vec<Edge>) -> Self {
        Graph { vertices, edges }
    }

    /// Build from vertex names and `(name, src, tgt)` triples of indices.
    pub fn from_indices(vertices: &[&str], edges: &[(&str, usize, usize)]) -> Self {
        Graph {
            vertices: vertices.iter().map(|v| v.to_string()).collect(),
            edges: edges.iter().map(|&(n, s, t)| Edge { name: n.into(), src: s, tgt: t }).collect(),
        }
    }

    /// `0 → 1 → ⋯ → n`; edge `k` goes from `k` to `k+1`.
    pub fn linear_quiver(n: usize) -> Self {
        Graph {
            vertices: (0..=n).map(|v| v.to_string()).collect(),
            edges: (0..n).map(|k| Edge { name: format!("{k}>{}", k + 1), src: k, tgt: k + 1 }).collect(),
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn src(&self, e: usize) -> usize {
        self.edges[e].src
    }

    pub fn tgt(&self, e: usize) -> usize {
        self.edges[e].tgt
    }

    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.edges.len()).filter(move |&e| self.edges[e].src == v)
    }

    pub fn validate(&self) -> Result<(), PathError> {
        for e in &self.edges {
            for v in [e.src, e.tgt] {
                if v >= self.vertices.len() {
                    return Err(PathError::BadVertex(v));
                }
            }
        }
        Ok(())
    }

    pub fn is_acyclic(&self) -> bool {
        let n = self.vertices.len();
        let mut indeg = vec![0; n];
        for e in &self.edges {
            indeg[e.tgt] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for e in self.out_edges(v) {
                let t = self.edges[e].tgt;
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    stack.push(t);
                }
            }
        }
        seen == n
    }
}

/// A path: a start vertex and a sequence of consecutive edges. The empty
/// path at `v` is the identity at `v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub start: usize,
    pub edges: Vec<usize>,
}

impl Path {
    pub fn empty(v: usize) -> Self {
        Path { start: v, edges: Vec::new() }
    }

    pub fn single(g: &Graph, e: usize) -> Self {
        Path { start: g.src(e), edges: vec![e] }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn end(&self, g: &Graph) -> usize {
        self.edges.last().map_or(self.start, |&e| g.tgt(e))
    }

    /// Vertices visited, `len + 1` of them.
    pub fn vertices(&self, g: &Graph) -> Vec<usize> {
        let mut vs = vec![self.start];
        vs.extend(self.edges.iter().map(|&e| g.tgt(e)));
        vs
    }

    pub fn check(&self, g: &Graph) -> Result<(), PathError> {
        if self.start >= g.num_vertices() {
            return Err(PathError::BadVertex(self.start));
        }
        let mut at = self.start;
        for &e in &self.edges {
            if e >= g.num_edges() {
                return Err(PathError::BadEdge(e));
            }
            if g.src(e) != at {
                return Err(PathError::Discontinuous { edge: e, expected: at });
            }
            at = g.tgt(e);
        }
        Ok(())
    }

    pub fn subpath(&self, from: usize, len: usize, g: &Graph) -> Path {
        let start = if from == 0 { self.start } else { g.tgt(self.edges[from - 1]) };
        Path { start, edges: self.edges[from..from + len].to_vec() }
    }

    pub fn label(&self, g: &Graph) -> String {
        if self.edges.is_empty() {
            format!("id({})", g.vertices[self.start])
        } else {
            self.edges.iter().map(|&e| g.edges[e].name.as_str()).collect::<Vec<_>>().join("|")
        }
    }
}

/// A path whose steps are paths of `g`: an element of `T(TG)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PathOfPaths {
    pub start: usize,
    pub steps: Vec<Path>,
}

/// `μ`: concatenate the inner paths.
pub fn mu_flatten(g: &Graph, outer: &PathOfPaths) -> Result<Path, PathError> {
    let mut at = outer.start;
    let mut edges = Vec::new();
    for (index, p) in outer.steps.iter().enumerate() {
        if p.start != at {
            return Err(PathError::InnerMismatch { index, found: p.start, expected: at });
        }
        p.check(g)?;
        edges.extend_from_slice(&p.edges);
        at = p.end(g);
    }
    Ok(Path { start: outer.start, edges })
}

/// `η_G`: an edge as a length-one path.
pub fn eta(g: &Graph, e: usize) -> Path {
    Path::single(g, e)
}

/// `T η`: every edge wrapped as a length-one step.
pub fn t_eta(g: &Graph, p: &Path) -> PathOfPaths {
    PathOfPaths { start: p.start, steps: p.edges.iter().map(|&e| eta(g, e)).collect() }
}

/// `η_{TG}`: the whole path as a single step.
pub fn eta_t(p: &Path) -> PathOfPaths {
    PathOfPaths { start: p.start, steps: vec![p.clone()] }
}

/// All paths of length at most `maxlen`, including the empty path at every
/// vertex, ordered by length then start then edges.
pub fn free_paths(g: &Graph, maxlen: usize) -> Vec<Path> {
    let mut out: Vec<Path> = (0..g.num_vertices()).map(Path::empty).collect();
    let mut frontier = out.clone();
    for _ in 0..maxlen {
        let mut next = Vec::new();
        for p in &frontier {
            for e in g.out_edges(p.end(g)) {
                let mut q = p.clone();
                q.edges.push(e);
                next.push(q);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Paths of length exactly `len`.
pub fn paths_of_length(g: &Graph, len: usize) -> Vec<Path> {
    let mut frontier: Vec<Path> = (0..g.num_vertices()).map(Path::empty).collect();
    for _ in 0..len {
        let mut next = Vec::new();
        for p in &frontier {
            for e in g.out_edges(p.end(g)) {
                let mut q = p.clone();
                q.edges.push(e);
                next.push(q);
            }
        }
        frontier = next;
    }
    frontier
}

/// Paths from `a` to `b` of length at most `maxlen`.
pub fn paths_between(g: &Graph, a: usize, b: usize, maxlen: usize) -> Vec<Path> {
    let mut out = Vec::new();
    let mut frontier = vec![Path::empty(a)];
    for len in 0..=maxlen {
        for p in &frontier {
            if p.end(g) == b {
                out.push(p.clone());
            }
        }
        if len == maxlen {
            break;
        }
        let mut next = Vec::new();
        for p in &frontier {
            for e in g.out_edges(p.end(g)) {
                let mut q = p.clone();
                q.edges.push(e);
                next.push(q);
            }
        }
        frontier = next;
    }
    out
}

/// A morphism of graphs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GraphMorphism {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl GraphMorphism {
    pub fn is_valid(&self, from: &Graph, to: &Graph) -> bool {
        self.vertices.len() == from.num_vertices()
            && self.edges.len() == from.num_edges()
            && self.vertices.iter().all(|&v| v < to.num_vertices())
            && self.edges.iter().all(|&e| e < to.num_edges())
            && from
                .edges
                .iter()
                .zip(&self.edges)
                .all(|(e, &fe)| to.src(fe) == self.vertices[e.src] && to.tgt(fe) == self.vertices[e.tgt])
    }

    /// `T f` on a path.
    pub fn map_path(&self, p: &Path) -> Path {
        Path { start: self.vertices[p.start], edges: p.edges.iter().map(|&e| self.edges[e]).collect() }
    }
}

/// All graph morphisms `from → to`.
pub fn enumerate_graph_morphisms(from: &Graph, to: &Graph) -> Vec<GraphMorphism> {
    let mut out = Vec::new();
    let mut vertices = vec![0; from.num_vertices()];
    fn vert(from: &Graph, to: &Graph, i: usize, vs: &mut Vec<usize>, out: &mut Vec<GraphMorphism>) {
        if i == from.num_vertices() {
            let choices: Vec<Vec<usize>> = from
                .edges
                .iter()
                .map(|e| (0..to.num_edges()).filter(|&f| to.src(f) == vs[e.src] && to.tgt(f) == vs[e.tgt]).collect())
                .collect();
            let mut edges = vec![0; from.num_edges()];
            fn edge(k: usize, choices: &[Vec<usize>], es: &mut Vec<usize>, vs: &[usize], out: &mut Vec<GraphMorphism>) {
                if k == choices.len() {
                    out.push(GraphMorphism { vertices: vs.to_vec(), edges: es.clone() });
                    return;
                }
                for &c in &choices[k] {
                    es[k] = c;
                    edge(k + 1, choices, es, vs, out);
                }
            }
            edge(0, &choices, &mut edges, vs, out);
            return;
        }
        for v in 0..to.num_vertices() {
            vs[i] = v;
            vert(from, to, i + 1, vs, out);
        }
    }
    vert(from, to, 0, &mut vertices, &mut out);
    out
}

/// A morphism `from → T to`: vertex images and one path per edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PathMorphism {
    pub vertices: Vec<usize>,
    pub edges: Vec<Path>,
}

impl PathMorphism {
    pub fn check(&self, from: &Graph, to: &Graph) -> Result<(), PathError> {
        if self.vertices.len() != from.num_vertices() || self.edges.len() != from.num_edges() {
            return Err(PathError::Shape(format!(
                "expected {} vertices and {} edges, got {} and {}",
                from.num_vertices(),
                from.num_edges(),
                self.vertices.len(),
                self.edges.len()
            )));
        }
        for &v in &self.vertices {
            if v >= to.num_vertices() {
                return Err(PathError::BadVertex(v));
            }
        }
        for (k, (e, p)) in from.edges.iter().zip(&self.edges).enumerate() {
            p.check(to)?;
            if p.start != self.vertices[e.src] || p.end(to) != self.vertices[e.tgt] {
                return Err(PathError::Shape(format!("image of edge {k} has the wrong endpoints")));
            }
        }
        Ok(())
    }
}

/// Every morphism `from → T to` whose edge images have length at most
/// `maxlen`.
pub fn enumerate_path_morphisms(from: &Graph, to: &Graph, maxlen: usize) -> Vec<PathMorphism> {
    let mut out = Vec::new();
    let mut vertices = vec![0; from.num_vertices()];
    fn vert(from: &Graph, to: &Graph, maxlen: usize, i: usize, vs: &mut Vec<usize>, out: &mut Vec<PathMorphism>) {
        if i == from.num_vertices() {
            let choices: Vec<Vec<Path>> = from.edges.iter().map(|e| paths_between(to, vs[e.src], vs[e.tgt], maxlen)).collect();
            let mut cur = Vec::with_capacity(choices.len());
            fn edge(k: usize, choices: &[Vec<Path>], cur: &mut Vec<Path>, vs: &[usize], out: &mut Vec<PathMorphism>) {
                if k == choices.len() {
                    out.push(PathMorphism { vertices: vs.to_vec(), edges: cur.clone() });
                    return;
                }
                for p in &choices[k] {
                    cur.push(p.clone());
                    edge(k + 1, choices, cur, vs, out);
                    cur.pop();
                }
            }
            edge(0, &choices, &mut cur, vs, out);
            return;
        }
        for v in 0..to.num_vertices() {
            vs[i] = v;
            vert(from, to, maxlen, i + 1, vs, out);
        }
    }
    vert(from, to, maxlen, 0, &mut vertices, &mut out);
    out
}

/// A graph isomorphism `g ≅ h`, found by backtracking over vertex
/// bijections and matching parallel edges in order.
pub fn find_graph_isomorphism(g: &Graph, h: &Graph) -> Option<GraphMorphism> {
    let n = g.num_vertices();
    if n != h.num_vertices() || g.num_edges() != h.num_edges() {
        return None;
    }
    let between = |gr: &Graph, a: usize, b: usize| -> Vec<usize> {
        (0..gr.num_edges()).filter(|&e| gr.src(e) == a && gr.tgt(e) == b).collect()
    };
    fn go(
        g: &Graph,
        h: &Graph,
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        count: &dyn Fn(&Graph, usize, usize) -> usize,
    ) -> bool {
        let k = perm.len();
        if k == g.num_vertices() {
            return true;
        }
        for v in 0..h.num_vertices() {
            if used[v] {
                continue;
            }
            perm.push(v);
            let ok = (0..=k).all(|j| count(g, j, k) == count(h, perm[j], v) && count(g, k, j) == count(h, v, perm[j]));
            if ok {
                used[v] = true;
                if go(g, h, perm, used, count) {
                    return true;
                }
                used[v] = false;
            }
            perm.pop();
        }
        false
    }
    let count = |gr: &Graph, a: usize, b: usize| between(gr, a, b).len();
    let mut perm = Vec::new();
    if !go(g, h, &mut perm, &mut vec![false; n], &count) {
        return None;
    }
    let mut edges = vec![0; g.num_edges()];
    for a in 0..n {
        for b in 0..n {
            for (x, y) in between(g, a, b).into_iter().zip(between(h, perm[a], perm[b])) {
                edges[x] = y;
            }
        }
    }
    Some(GraphMorphism { vertices: perm, edges })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_quivers() {
        let g = Graph::linear_quiver(0);
        assert_eq!((g.num_vertices(), g.num_edges()), (1, 0));
        let g = Graph::linear_quiver(2);
        assert_eq!((g.num_vertices(), g.num_edges()), (3, 2));
        let homs = enumerate_graph_morphisms(&Graph::linear_quiver(1), &g);
        assert_eq!(homs.len(), 2);
    }

    #[test]
    fn free_path_counts() {
        assert_eq!(free_paths(&Graph::linear_quiver(2), 2).len(), 6);
        let loop_graph = Graph::from_indices(&["v"], &[("l", 0, 0)]);
        assert_eq!(free_paths(&loop_graph, 3).len(), 4);
        assert!(free_paths(&Graph::default(), 5).is_empty());
    }

    #[test]
    fn flatten_and_units() {
        let g = Graph::linear_quiver(3);
        let a = Path { start: 0, edges: vec![0] };
        let b = Path { start: 1, edges: vec![1] };
        let flat = mu_flatten(&g, &PathOfPaths { start: 0, steps: vec![a, b] }).unwrap();
        assert_eq!(flat, Path { start: 0, edges: vec![0, 1] });
        let p = Path { start: 0, edges: vec![0, 1, 2] };
        assert_eq!(mu_flatten(&g, &t_eta(&g, &p)).unwrap(), p);
        assert_eq!(mu_flatten(&g, &eta_t(&p)).unwrap(), p);
        let bad = PathOfPaths { start: 0, steps: vec![Path { start: 1, edges: vec![1] }] };
        assert!(mu_flatten(&g, &bad).is_err());
    }
}
