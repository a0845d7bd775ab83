use thiserror::Error;

use super::globset::GlobularSet2;

/// A 2-pasting diagram as the heights of its columns: column `i` is a
/// vertical stack of `heights[i]` 2-cells (a bare arrow when 0).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Pd2 {
    pub heights: Vec<usize>,
}

impl Pd2 {
    pub fn new(heights: Vec<usize>) -> Self {
        Pd2 { heights }
    }

    pub fn width(&self) -> usize {
        self.heights.len()
    }

    pub fn cells(&self) -> usize {
        self.heights.iter().sum()
    }

    /// All shapes with width `≤ max_width` and every height `≤ max_height`.
    pub fn all(max_width: usize, max_height: usize) -> Vec<Pd2> {
        let mut out = vec![Pd2::default()];
        let mut frontier = vec![Pd2::default()];
        for _ in 0..max_width {
            let mut next = Vec::new();
            for p in &frontier {
                for h in 0..=max_height {
                    let mut q = p.clone();
                    q.heights.push(h);
                    next.push(q);
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    /// Shapes with width `≤ max_width` and at most `max_cells` 2-cells.
    pub fn bounded(max_width: usize, max_cells: usize) -> Vec<Pd2> {
        Pd2::all(max_width, max_cells).into_iter().filter(|p| p.cells() <= max_cells).collect()
    }
}

/// Index tables of a realization: `rails[i][j]` is the `j`-th parallel
/// 1-cell of column `i` (bottom to top), `cells[i][j]` the 2-cell from rail
/// `j` to rail `j+1`.
#[derive(Debug, Clone)]
pub struct Realization {
    pub shape: Pd2,
    pub globular: GlobularSet2,
    pub rails: Vec<Vec<usize>>,
    pub cells: Vec<Vec<usize>>,
}

/// The 2-globular set of a pasting diagram.
pub fn pd_realize(p: &Pd2) -> Realization {
    let m = p.width();
    let mut g = GlobularSet2 { cells0: (0..=m).map(|i| format!("v{i}")).collect(), ..Default::default() };
    let mut rails = Vec::with_capacity(m);
    let mut cells = Vec::with_capacity(m);
    for (i, &k) in p.heights.iter().enumerate() {
        let rs: Vec<usize> = (0..=k)
            .map(|j| {
                g.cells1.push(format!("e{i}.{j}"));
                g.s1.push(i);
                g.t1.push(i + 1);
                g.cells1.len() - 1
            })
            .collect();
        let cs: Vec<usize> = (0..k)
            .map(|j| {
                g.cells2.push(format!("a{i}.{j}"));
                g.s2.push(rs[j]);
                g.t2.push(rs[j + 1]);
                g.cells2.len() - 1
            })
            .collect();
        rails.push(rs);
        cells.push(cs);
    }
    Realization { shape: p.clone(), globular: g, rails, cells }
}

/// What a column of the outer diagram is substituted by.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColumnLabel {
    /// One diagram per 2-cell, bottom to top; all of one width.
    Cells(Vec<Pd2>),
    /// A bare column replaced by a path of this length.
    Bare(usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComposeError {
    #[error("column {column}: labels have widths {first} and {other}")]
    WidthMismatch { column: usize, first: usize, other: usize },
    #[error("column {column}: {expected} labels expected, {got} given")]
    LabelCount { column: usize, expected: usize, got: usize },
    #[error("{expected} column labels expected, {got} given")]
    ColumnCount { expected: usize, got: usize },
}

/// Substitute diagrams into the cells of `outer`: within a column the
/// labels share one width `w` and stack by adding heights; a bare column
/// becomes `w` bare columns.
pub fn pd_compose(outer: &Pd2, labels: &[ColumnLabel]) -> Result<Pd2, ComposeError> {
    if labels.len() != outer.width() {
        return Err(ComposeError::ColumnCount { expected: outer.width(), got: labels.len() });
    }
    let mut heights = Vec::new();
    for (i, (label, &k)) in labels.iter().zip(&outer.heights).enumerate() {
        match label {
            ColumnLabel::Bare(w) if k == 0 => heights.extend(std::iter::repeat(0).take(*w)),
            ColumnLabel::Bare(_) => return Err(ComposeError::LabelCount { column: i, expected: k, got: 0 }),
            ColumnLabel::Cells(ps) => {
                if ps.len() != k || k == 0 {
                    return Err(ComposeError::LabelCount { column: i, expected: k, got: ps.len() });
                }
                let w = ps[0].width();
                let mut block = vec![0; w];
                for p in ps {
                    if p.width() != w {
                        return Err(ComposeError::WidthMismatch { column: i, first: w, other: p.width() });
                    }
                    for (b, h) in block.iter_mut().zip(&p.heights) {
                        *b += h;
                    }
                }
                heights.extend(block);
            }
        }
    }
    Ok(Pd2 { heights })
}

/// Push labels for the composite `pd_compose(outer, labels)` back onto each
/// inner diagram, so that composing in the other order is possible.
/// `inner[c]` labels column `c` of the composite.
pub fn distribute_labels(outer: &Pd2, labels: &[ColumnLabel], inner: &[ColumnLabel]) -> Result<Vec<ColumnLabel>, ComposeError> {
    let width_of = |l: &ColumnLabel| match l {
        ColumnLabel::Bare(w) => *w,
        ColumnLabel::Cells(ps) => ps[0].width(),
    };
    let mut at = 0;
    let mut out = Vec::with_capacity(outer.width());
    for label in labels {
        match label {
            ColumnLabel::Bare(w) => {
                let total = inner[at..at + w].iter().map(width_of).sum();
                at += w;
                out.push(ColumnLabel::Bare(total));
            }
            ColumnLabel::Cells(ps) => {
                let w = ps[0].width();
                // cells of composite column c consumed so far
                let mut used = vec![0; w];
                let mut relabelled = Vec::with_capacity(ps.len());
                for p in ps {
                    let sub: Vec<ColumnLabel> = (0..w)
                        .map(|c| match &inner[at + c] {
                            ColumnLabel::Cells(qs) if p.heights[c] > 0 => {
                                let slice = qs[used[c]..used[c] + p.heights[c]].to_vec();
                                used[c] += p.heights[c];
                                ColumnLabel::Cells(slice)
                            }
                            other => ColumnLabel::Bare(width_of(other)),
                        })
                        .collect();
                    relabelled.push(pd_compose(p, &sub)?);
                }
                at += w;
                out.push(ColumnLabel::Cells(relabelled));
            }
        }
    }
    Ok(out)
}

/// Level-tree view: the root has one child per column, column `i` has
/// `heights[i]` leaves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelTree {
    pub children: Vec<LevelTree>,
}

pub fn to_level_tree(p: &Pd2) -> LevelTree {
    LevelTree {
        children: p.heights.iter().map(|&k| LevelTree { children: vec![LevelTree { children: Vec::new() }; k] }).collect(),
    }
}

/// `None` if the tree is deeper than two levels.
pub fn from_level_tree(t: &LevelTree) -> Option<Pd2> {
    let mut heights = Vec::with_capacity(t.children.len());
    for c in &t.children {
        if c.children.iter().any(|l| !l.children.is_empty()) {
            return None;
        }
        heights.push(c.children.len());
    }
    Some(Pd2 { heights })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pd(h: &[usize]) -> Pd2 {
        Pd2::new(h.to_vec())
    }

    #[test]
    fn realizations() {
        let r = pd_realize(&pd(&[]));
        assert_eq!((r.globular.cells0.len(), r.globular.cells1.len()), (1, 0));
        let r = pd_realize(&pd(&[0]));
        assert_eq!((r.globular.cells0.len(), r.globular.cells1.len(), r.globular.cells2.len()), (2, 1, 0));
        let r = pd_realize(&pd(&[2, 0, 1]));
        assert_eq!(r.globular.cells0.len(), 4);
        assert_eq!(r.globular.cells1.len(), 3 + 1 + 2);
        assert_eq!(r.globular.cells2.len(), 3);
        assert!(r.globular.validate().is_empty());
        // the double cell of column 0 runs e0.0 ⇒ e0.1 ⇒ e0.2
        let (a, b) = (r.cells[0][0], r.cells[0][1]);
        assert_eq!(r.globular.t2[a], r.globular.s2[b]);
    }

    #[test]
    fn worked_composition() {
        let outer = pd(&[2, 1, 0]);
        let labels =
            [ColumnLabel::Cells(vec![pd(&[0, 0]), pd(&[1, 2])]), ColumnLabel::Cells(vec![pd(&[0, 2])]), ColumnLabel::Bare(2)];
        assert_eq!(pd_compose(&outer, &labels).unwrap(), pd(&[1, 2, 0, 2, 0, 0]));
    }

    #[test]
    fn units() {
        let rho = pd(&[2, 0, 1]);
        assert_eq!(pd_compose(&pd(&[1]), &[ColumnLabel::Cells(vec![rho.clone()])]).unwrap(), rho);
        let single: Vec<ColumnLabel> = rho
            .heights
            .iter()
            .map(|&k| if k == 0 { ColumnLabel::Bare(1) } else { ColumnLabel::Cells(vec![pd(&[1]); k]) })
            .collect();
        assert_eq!(pd_compose(&rho, &single).unwrap(), rho);
    }

    #[test]
    fn width_mismatch_is_an_error() {
        let err = pd_compose(&pd(&[2]), &[ColumnLabel::Cells(vec![pd(&[1]), pd(&[1, 1])])]).unwrap_err();
        assert_eq!(err, ComposeError::WidthMismatch { column: 0, first: 1, other: 2 });
    }

    #[test]
    fn level_trees_round_trip() {
        for p in Pd2::all(3, 2) {
            assert_eq!(from_level_tree(&to_level_tree(&p)), Some(p));
        }
    }
}
