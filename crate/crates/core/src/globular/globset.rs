use std::collections::{HashMap, HashSet};
use std::fmt::Debug;
use std::hash::Hash;

use super::pd::Pd2;

/// Bounds for the cell types of a 2-globular set.
pub trait Cell: Clone + Eq + Hash + Ord + Debug {}
impl<T: Clone + Eq + Hash + Ord + Debug> Cell for T {}

/// A 2-globular set whose cells can be listed up to a size bound.
pub trait Globular2 {
    type C0: Cell;
    type C1: Cell;
    type C2: Cell;
    fn s1(&self, x: &Self::C1) -> Self::C0;
    fn t1(&self, x: &Self::C1) -> Self::C0;
    fn s2(&self, x: &Self::C2) -> Self::C1;
    fn t2(&self, x: &Self::C2) -> Self::C1;
    fn cells0(&self) -> Vec<Self::C0>;
    fn cells1(&self, bound: usize) -> Vec<Self::C1>;
    fn cells2(&self, bound: usize) -> Vec<Self::C2>;
}

/// A finite 2-globular set with named cells.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GlobularSet2 {
    pub cells0: Vec<String>,
    pub cells1: Vec<String>,
    pub cells2: Vec<String>,
    pub s1: Vec<usize>,
    pub t1: Vec<usize>,
    pub s2: Vec<usize>,
    pub t2: Vec<usize>,
}

impl GlobularSet2 {
    /// Shape errors, then every cell where `s1∘s2 = s1∘t2` or
    /// `t1∘s2 = t1∘t2` fails.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        let (n0, n1) = (self.cells0.len(), self.cells1.len());
        if self.s1.len() != n1 || self.t1.len() != n1 || self.s1.iter().chain(&self.t1).any(|&v| v >= n0) {
            out.push("1-cell boundaries malformed".into());
        }
        let n2 = self.cells2.len();
        if self.s2.len() != n2 || self.t2.len() != n2 || self.s2.iter().chain(&self.t2).any(|&e| e >= n1) {
            out.push("2-cell boundaries malformed".into());
        }
        if !out.is_empty() {
            return out;
        }
        for a in 0..n2 {
            let (s, t) = (self.s2[a], self.t2[a]);
            if self.s1[s] != self.s1[t] {
                out.push(format!("s1∘s2 ≠ s1∘t2 at {}", self.cells2[a]));
            }
            if self.t1[s] != self.t1[t] {
                out.push(format!("t1∘s2 ≠ t1∘t2 at {}", self.cells2[a]));
            }
        }
        out
    }
}

impl Globular2 for GlobularSet2 {
    type C0 = usize;
    type C1 = usize;
    type C2 = usize;
    fn s1(&self, x: &usize) -> usize {
        self.s1[*x]
    }
    fn t1(&self, x: &usize) -> usize {
        self.t1[*x]
    }
    fn s2(&self, x: &usize) -> usize {
        self.s2[*x]
    }
    fn t2(&self, x: &usize) -> usize {
        self.t2[*x]
    }
    fn cells0(&self) -> Vec<usize> {
        (0..self.cells0.len()).collect()
    }
    fn cells1(&self, _: usize) -> Vec<usize> {
        (0..self.cells1.len()).collect()
    }
    fn cells2(&self, _: usize) -> Vec<usize> {
        (0..self.cells2.len()).collect()
    }
}

/// A path of 1-cells; the empty path remembers its vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path1<C0, C1> {
    pub start: C0,
    pub edges: Vec<C1>,
}

/// One column of a labelled pasting diagram: `rails` has one entry for a
/// bare column, `k+1` for a stack of `k` cells.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Column<C1, C2> {
    pub rails: Vec<C1>,
    pub cells: Vec<C2>,
}

/// A pasting diagram whose cells are labelled by cells of a globular set:
/// a morphism from the realization of `shape`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Labeling<C0, C1, C2> {
    pub shape: Pd2,
    pub vertices: Vec<C0>,
    pub columns: Vec<Column<C1, C2>>,
}

impl<C0: Clone, C1: Clone, C2: Clone> Labeling<C0, C1, C2> {
    pub fn source_path(&self) -> Path1<C0, C1> {
        Path1 { start: self.vertices[0].clone(), edges: self.columns.iter().map(|c| c.rails[0].clone()).collect() }
    }

    pub fn target_path(&self) -> Path1<C0, C1> {
        Path1 { start: self.vertices[0].clone(), edges: self.columns.iter().map(|c| c.rails.last().unwrap().clone()).collect() }
    }

    /// Relabel along a morphism of globular sets.
    pub fn map<D0, D1, D2>(
        &self,
        f0: &dyn Fn(&C0) -> D0,
        f1: &dyn Fn(&C1) -> D1,
        f2: &dyn Fn(&C2) -> D2,
    ) -> Labeling<D0, D1, D2> {
        Labeling {
            shape: self.shape.clone(),
            vertices: self.vertices.iter().map(f0).collect(),
            columns: self
                .columns
                .iter()
                .map(|c| Column { rails: c.rails.iter().map(f1).collect(), cells: c.cells.iter().map(f2).collect() })
                .collect(),
        }
    }

    /// The labeling as a morphism out of `pd_realize(shape)`: images of
    /// 0-, 1- and 2-cells indexed as in the realization.
    pub fn tables(&self) -> (Vec<C0>, Vec<C1>, Vec<C2>) {
        (
            self.vertices.clone(),
            self.columns.iter().flat_map(|c| c.rails.iter().cloned()).collect(),
            self.columns.iter().flat_map(|c| c.cells.iter().cloned()).collect(),
        )
    }
}

/// Transport a labeling by realization indices along a morphism given as
/// tables (see [`Labeling::tables`]).
pub fn relabel<C0: Clone, C1: Clone, C2: Clone>(
    l: &Labeling<usize, usize, usize>,
    t: &(Vec<C0>, Vec<C1>, Vec<C2>),
) -> Labeling<C0, C1, C2> {
    l.map(&|&v| t.0[v].clone(), &|&e| t.1[e].clone(), &|&a| t.2[a].clone())
}

/// Whether a labeling respects every source and target.
pub fn labeling_is_valid<G: Globular2>(g: &G, l: &Labeling<G::C0, G::C1, G::C2>) -> bool {
    if l.vertices.len() != l.shape.width() + 1 || l.columns.len() != l.shape.width() {
        return false;
    }
    l.columns.iter().enumerate().all(|(i, col)| {
        let k = l.shape.heights[i];
        col.rails.len() == k + 1
            && col.cells.len() == k
            && col.rails.iter().all(|r| g.s1(r) == l.vertices[i] && g.t1(r) == l.vertices[i + 1])
            && col.cells.iter().enumerate().all(|(j, a)| g.s2(a) == col.rails[j] && g.t2(a) == col.rails[j + 1])
    })
}

/// The free 2-category on `G`: 1-cells are paths, 2-cells are labelled
/// pasting diagrams.
#[derive(Debug, Clone, Copy)]
pub struct Free<'a, G>(pub &'a G);

pub type FreeC1<G> = Path1<<G as Globular2>::C0, <G as Globular2>::C1>;
pub type FreeC2<G> = Labeling<<G as Globular2>::C0, <G as Globular2>::C1, <G as Globular2>::C2>;

impl<G: Globular2> Globular2 for Free<'_, G> {
    type C0 = G::C0;
    type C1 = FreeC1<G>;
    type C2 = FreeC2<G>;
    fn s1(&self, x: &Self::C1) -> G::C0 {
        x.start.clone()
    }
    fn t1(&self, x: &Self::C1) -> G::C0 {
        x.edges.last().map_or_else(|| x.start.clone(), |e| self.0.t1(e))
    }
    fn s2(&self, x: &Self::C2) -> Self::C1 {
        x.source_path()
    }
    fn t2(&self, x: &Self::C2) -> Self::C1 {
        x.target_path()
    }
    fn cells0(&self) -> Vec<G::C0> {
        self.0.cells0()
    }
    fn cells1(&self, bound: usize) -> Vec<Self::C1> {
        paths_up_to(self.0, bound)
    }
    fn cells2(&self, bound: usize) -> Vec<Self::C2> {
        free2_cells(self.0, bound)
    }
}

/// Paths of 1-cells of length `≤ bound`.
pub fn paths_up_to<G: Globular2>(g: &G, bound: usize) -> Vec<FreeC1<G>> {
    let c1 = g.cells1(bound);
    let mut out: Vec<FreeC1<G>> = g.cells0().into_iter().map(|v| Path1 { start: v, edges: Vec::new() }).collect();
    let mut frontier = out.clone();
    for _ in 0..bound {
        let mut next = Vec::new();
        for p in &frontier {
            let end = Free(g).t1(p);
            for e in c1.iter().filter(|e| g.s1(e) == end) {
                let mut q = p.clone();
                q.edges.push(e.clone());
                next.push(q);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Every labeling of `shape` by cells of `g` (cells listed with `bound`).
pub fn labelings_of_shape<G: Globular2>(g: &G, shape: &Pd2, bound: usize) -> Vec<FreeC2<G>> {
    let c1 = g.cells1(bound);
    let c2 = g.cells2(bound);
    let mut by_src1: HashMap<G::C0, Vec<G::C1>> = HashMap::new();
    for e in &c1 {
        by_src1.entry(g.s1(e)).or_default().push(e.clone());
    }
    let mut by_src2: HashMap<G::C1, Vec<G::C2>> = HashMap::new();
    for a in &c2 {
        by_src2.entry(g.s2(a)).or_default().push(a.clone());
    }
    let mut out = Vec::new();
    for v in g.cells0() {
        let mut partial = Labeling { shape: shape.clone(), vertices: vec![v], columns: Vec::new() };
        extend_columns(g, &by_src1, &by_src2, &mut partial, &mut out);
    }
    out
}

fn extend_columns<G: Globular2>(
    g: &G,
    by_src1: &HashMap<G::C0, Vec<G::C1>>,
    by_src2: &HashMap<G::C1, Vec<G::C2>>,
    partial: &mut FreeC2<G>,
    out: &mut Vec<FreeC2<G>>,
) {
    let i = partial.columns.len();
    if i == partial.shape.width() {
        out.push(partial.clone());
        return;
    }
    let k = partial.shape.heights[i];
    let here = partial.vertices[i].clone();
    let Some(bottoms) = by_src1.get(&here) else { return };
    for bottom in bottoms {
        // stacks of k cells starting from this rail
        let mut stacks: Vec<Column<G::C1, G::C2>> = vec![Column { rails: vec![bottom.clone()], cells: Vec::new() }];
        for _ in 0..k {
            let mut next = Vec::new();
            for col in &stacks {
                for a in by_src2.get(col.rails.last().unwrap()).into_iter().flatten() {
                    let mut c = col.clone();
                    c.rails.push(g.t2(a));
                    c.cells.push(a.clone());
                    next.push(c);
                }
            }
            stacks = next;
        }
        for col in stacks {
            partial.vertices.push(g.t1(bottom));
            partial.columns.push(col);
            extend_columns(g, by_src1, by_src2, partial, out);
            partial.columns.pop();
            partial.vertices.pop();
        }
    }
}

/// Free 2-cells with width and total cell count at most `bound`.
pub fn free2_cells<G: Globular2>(g: &G, bound: usize) -> Vec<FreeC2<G>> {
    Pd2::bounded(bound, bound).iter().flat_map(|p| labelings_of_shape(g, p, bound)).collect()
}

/// `η` on 1-cells: a path of length one.
pub fn eta1<G: Globular2>(g: &G, e: &G::C1) -> FreeC1<G> {
    Path1 { start: g.s1(e), edges: vec![e.clone()] }
}

/// `η` on 2-cells: the one-cell diagram.
pub fn eta2<G: Globular2>(g: &G, a: &G::C2) -> FreeC2<G> {
    let (s, t) = (g.s2(a), g.t2(a));
    Labeling {
        shape: Pd2::new(vec![1]),
        vertices: vec![g.s1(&s), g.t1(&s)],
        columns: vec![Column { rails: vec![s, t], cells: vec![a.clone()] }],
    }
}

/// `μ` on 1-cells: concatenate a path of paths.
pub fn mu1<C0: Clone, C1: Clone>(p: &Path1<C0, Path1<C0, C1>>) -> Path1<C0, C1> {
    Path1 { start: p.start.clone(), edges: p.edges.iter().flat_map(|q| q.edges.iter().cloned()).collect() }
}

/// `μ` on 2-cells: substitute each labelled cell by its diagram and each
/// bare rail by its path. The shape is `pd_compose` of the shapes.
pub fn mu2_substitute<G: Globular2>(g: &G, outer: &FreeC2<Free<'_, G>>) -> FreeC2<G> {
    let mut vertices = Vec::new();
    let mut columns = Vec::new();
    let mut heights = Vec::new();
    for (i, col) in outer.columns.iter().enumerate() {
        vertices.push(outer.vertices[i].clone());
        if col.cells.is_empty() {
            let p = &col.rails[0];
            for (c, e) in p.edges.iter().enumerate() {
                if c > 0 {
                    vertices.push(g.s1(e));
                }
                columns.push(Column { rails: vec![e.clone()], cells: Vec::new() });
                heights.push(0);
            }
            if p.edges.is_empty() {
                vertices.pop();
            }
            continue;
        }
        let first = &col.cells[0];
        let w = first.shape.width();
        if w == 0 {
            vertices.pop();
            continue;
        }
        vertices.extend(first.vertices[1..w].iter().cloned());
        for c in 0..w {
            let mut rails = vec![first.columns[c].rails[0].clone()];
            let mut cells = Vec::new();
            for q in &col.cells {
                rails.extend(q.columns[c].rails[1..].iter().cloned());
                cells.extend(q.columns[c].cells.iter().cloned());
            }
            heights.push(cells.len());
            columns.push(Column { rails, cells });
        }
    }
    vertices.push(outer.vertices.last().unwrap().clone());
    Labeling { shape: Pd2::new(heights), vertices, columns }
}

/// `T η`: every cell wrapped by `η`, every rail by `η₁`.
pub fn t_eta<'a, G: Globular2>(g: &'a G, l: &FreeC2<G>) -> FreeC2<Free<'a, G>> {
    l.map(&|v: &G::C0| v.clone(), &|e: &G::C1| eta1(g, e), &|a: &G::C2| eta2(g, a))
}

/// `η_T`: the diagram itself as a single cell.
pub fn eta_t<'a, G: Globular2>(g: &'a G, l: &FreeC2<G>) -> FreeC2<Free<'a, G>> {
    eta2(&Free(g), l)
}

/// `T μ` on `TTT G`: apply `μ` inside every cell and rail.
pub fn t_mu<'a, G: Globular2>(g: &'a G, l: &FreeC2<Free<'a, Free<'a, G>>>) -> FreeC2<Free<'a, G>> {
    l.map(&|v: &G::C0| v.clone(), &|p: &FreeC1<Free<'a, G>>| mu1(p), &|a: &FreeC2<Free<'a, G>>| mu2_substitute(g, a))
}

/// All preimages of `l` under `μ` in which each outer column stacks at most
/// `max_stack` cells: cut the columns into consecutive blocks and each
/// block's stacks into pieces.
/// `_g` only fixes the lifetime of the result.
pub fn ungroup<'a, G: Globular2>(_g: &'a G, l: &FreeC2<G>, max_stack: usize) -> Vec<FreeC2<Free<'a, G>>> {
    let mut out = Vec::new();
    let mut acc = Labeling { shape: Pd2::default(), vertices: vec![l.vertices[0].clone()], columns: Vec::new() };
    ungroup_from::<G>(l, 0, max_stack, &mut acc, &mut out);
    out
}

fn ungroup_from<'a, G: Globular2>(
    l: &FreeC2<G>,
    at: usize,
    max_stack: usize,
    acc: &mut FreeC2<Free<'a, G>>,
    out: &mut Vec<FreeC2<Free<'a, G>>>,
) {
    if at == l.shape.width() {
        out.push(acc.clone());
        return;
    }
    for end in at + 1..=l.shape.width() {
        let block: Vec<usize> = (at..end).collect();
        let start = l.vertices[at].clone();
        let stop = l.vertices[end].clone();
        let mut options: Vec<Column<FreeC1<G>, FreeC2<G>>> = Vec::new();
        if block.iter().all(|&c| l.shape.heights[c] == 0) {
            let path = Path1 { start: start.clone(), edges: block.iter().map(|&c| l.columns[c].rails[0].clone()).collect() };
            options.push(Column { rails: vec![path], cells: Vec::new() });
        }
        for k in 1..=max_stack {
            for cut in stack_cuts(&block.iter().map(|&c| l.shape.heights[c]).collect::<Vec<_>>(), k) {
                options.push(block_column::<G>(l, &block, &cut));
            }
        }
        for col in options {
            acc.shape.heights.push(col.cells.len());
            acc.vertices.push(stop.clone());
            acc.columns.push(col);
            ungroup_from::<G>(l, end, max_stack, acc, out);
            acc.columns.pop();
            acc.vertices.pop();
            acc.shape.heights.pop();
        }
    }
}

/// Ways to split each height `h_c` into `k` ordered nonnegative parts:
/// `cut[j][c]` is the height of piece `j` in column `c`.
fn stack_cuts(heights: &[usize], k: usize) -> Vec<Vec<Vec<usize>>> {
    fn parts(h: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 1 {
            return vec![vec![h]];
        }
        (0..=h)
            .flat_map(|first| {
                parts(h - first, k - 1).into_iter().map(move |mut rest| {
                    rest.insert(0, first);
                    rest
                })
            })
            .collect()
    }
    let mut out: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); k]];
    for &h in heights {
        let mut next = Vec::new();
        for partial in &out {
            for p in parts(h, k) {
                let mut q = partial.clone();
                for (j, part) in p.into_iter().enumerate() {
                    q[j].push(part);
                }
                next.push(q);
            }
        }
        out = next;
    }
    out
}

fn block_column<G: Globular2>(l: &FreeC2<G>, block: &[usize], cut: &[Vec<usize>]) -> Column<FreeC1<G>, FreeC2<G>> {
    let mut used = vec![0; block.len()];
    let mut cells = Vec::with_capacity(cut.len());
    for piece in cut {
        let columns: Vec<Column<G::C1, G::C2>> = block
            .iter()
            .enumerate()
            .map(|(b, &c)| {
                let (lo, hi) = (used[b], used[b] + piece[b]);
                used[b] = hi;
                Column { rails: l.columns[c].rails[lo..=hi].to_vec(), cells: l.columns[c].cells[lo..hi].to_vec() }
            })
            .collect();
        cells.push(Labeling {
            shape: Pd2::new(piece.clone()),
            vertices: l.vertices[block[0]..=block[block.len() - 1] + 1].to_vec(),
            columns,
        });
    }
    let rails = std::iter::once(cells[0].source_path()).chain(cells.iter().map(|q| q.target_path())).collect();
    Column { rails, cells }
}

/// Close the generators (vertices, 1-cells and 2-cells, each as a diagram)
/// under horizontal and vertical composition, keeping width and cell count
/// within `bound`.
pub fn generate_by_moves<G: Globular2>(g: &G, bound: usize) -> HashSet<FreeC2<G>> {
    let mut seen: HashSet<FreeC2<G>> = HashSet::new();
    let mut todo: Vec<FreeC2<G>> = Vec::new();
    for v in g.cells0() {
        todo.push(Labeling { shape: Pd2::default(), vertices: vec![v], columns: Vec::new() });
    }
    if bound >= 1 {
        for e in g.cells1(bound) {
            todo.push(Labeling {
                shape: Pd2::new(vec![0]),
                vertices: vec![g.s1(&e), g.t1(&e)],
                columns: vec![Column { rails: vec![e], cells: Vec::new() }],
            });
        }
        for a in g.cells2(bound) {
            todo.push(eta2(g, &a));
        }
    }
    let within = |l: &FreeC2<G>| l.shape.width() <= bound && l.shape.cells() <= bound;
    while let Some(x) = todo.pop() {
        if !seen.insert(x.clone()) {
            continue;
        }
        let known: Vec<FreeC2<G>> = seen.iter().cloned().collect();
        for y in &known {
            for (a, b) in [(&x, y), (y, &x)] {
                if let Some(h) = horizontal(a, b).filter(within) {
                    if !seen.contains(&h) {
                        todo.push(h);
                    }
                }
                if let Some(v) = vertical(a, b).filter(within) {
                    if !seen.contains(&v) {
                        todo.push(v);
                    }
                }
            }
        }
    }
    seen
}

/// `a` then `b` side by side, when `a` ends where `b` starts.
pub fn horizontal<C0: Cell, C1: Cell, C2: Cell>(
    a: &Labeling<C0, C1, C2>,
    b: &Labeling<C0, C1, C2>,
) -> Option<Labeling<C0, C1, C2>> {
    if a.vertices.last() != b.vertices.first() {
        return None;
    }
    let mut out = a.clone();
    out.shape.heights.extend(b.shape.heights.iter().copied());
    out.vertices.extend(b.vertices[1..].iter().cloned());
    out.columns.extend(b.columns.iter().cloned());
    Some(out)
}

/// `a` then `b` stacked, when the top of `a` is the bottom of `b`.
pub fn vertical<C0: Cell, C1: Cell, C2: Cell>(
    a: &Labeling<C0, C1, C2>,
    b: &Labeling<C0, C1, C2>,
) -> Option<Labeling<C0, C1, C2>> {
    if a.target_path() != b.source_path() {
        return None;
    }
    let mut out = a.clone();
    for (i, (col, top)) in out.columns.iter_mut().zip(&b.columns).enumerate() {
        col.rails.extend(top.rails[1..].iter().cloned());
        col.cells.extend(top.cells.iter().cloned());
        out.shape.heights[i] = col.cells.len();
    }
    Some(out)
}
