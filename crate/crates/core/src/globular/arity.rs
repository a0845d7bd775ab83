use thiserror::Error;

use super::globset::*;
use super::pd::{pd_realize, Pd2, Realization};

/// A 2-cell of the free 2-category over a realization, by cell index.
pub type RealCell = Labeling<usize, usize, usize>;
/// A morphism `R(P) → T R(F)`: a labeling of `P` by free cells of `R(F)`.
pub type KleisliMap = Labeling<usize, Path1<usize, usize>, RealCell>;

/// `g = T f ∘ e` with `e: R(P) → T R(F)` and `f: R(F) → X`.
#[derive(Debug, Clone)]
pub struct Factorization2<C0, C1, C2> {
    pub middle: Pd2,
    pub e: KleisliMap,
    pub f: Labeling<C0, C1, C2>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Factorize2Error {
    #[error("the morphism does not respect sources and targets")]
    Malformed,
}

/// `T f ∘ e` for a morphism `f` out of a realization.
pub fn recompose<C0: Cell, C1: Cell, C2: Cell>(
    e: &KleisliMap,
    f: &Labeling<C0, C1, C2>,
) -> Labeling<C0, Path1<C0, C1>, Labeling<C0, C1, C2>> {
    let t = f.tables();
    e.map(
        &|&v| t.0[v].clone(),
        &|p| Path1 { start: t.0[p.start].clone(), edges: p.edges.iter().map(|&r| t.1[r].clone()).collect() },
        &|d| relabel(d, &t),
    )
}

/// Glue the images of the cells of `g` side by side and on top of each
/// other: `F` is the shape of `μ g`, `f` is `μ g` itself and `e` sends each
/// position of `P` to the block it occupies in `F`.
pub fn arity_factorize2<G: Globular2>(
    x: &G,
    g: &FreeC2<Free<'_, G>>,
) -> Result<Factorization2<G::C0, G::C1, G::C2>, Factorize2Error> {
    if !labeling_is_valid(&Free(x), g) {
        return Err(Factorize2Error::Malformed);
    }
    let f = mu2_substitute(x, g);
    let middle = f.shape.clone();
    let r = pd_realize(&middle);
    let mut e = KleisliMap { shape: g.shape.clone(), vertices: vec![0], columns: Vec::new() };
    let mut at = 0;
    for col in &g.columns {
        if col.cells.is_empty() {
            let n = col.rails[0].edges.len();
            let path = Path1 { start: at, edges: (at..at + n).map(|c| r.rails[c][0]).collect() };
            e.columns.push(Column { rails: vec![path], cells: Vec::new() });
            at += n;
        } else {
            let w = col.cells[0].shape.width();
            let mut used = vec![0; w];
            let mut cells = Vec::with_capacity(col.cells.len());
            for q in &col.cells {
                cells.push(block(&r, at, &mut used, &q.shape));
            }
            let rails = std::iter::once(cells[0].source_path()).chain(cells.iter().map(|d| d.target_path())).collect();
            e.columns.push(Column { rails, cells });
            at += w;
        }
        e.vertices.push(at);
    }
    Ok(Factorization2 { middle, e, f })
}

/// The sub-diagram of `R(F)` with shape `q` starting at column `at`, just
/// above the cells already `used`.
fn block(r: &Realization, at: usize, used: &mut [usize], q: &Pd2) -> RealCell {
    let columns = q
        .heights
        .iter()
        .enumerate()
        .map(|(c, &h)| {
            let (lo, hi) = (used[c], used[c] + h);
            used[c] = hi;
            Column { rails: r.rails[at + c][lo..=hi].to_vec(), cells: r.cells[at + c][lo..hi].to_vec() }
        })
        .collect();
    RealCell { shape: q.clone(), vertices: (at..=at + q.width()).collect(), columns }
}

/// Every factorization of `g` through `R(middle)`, by brute force over
/// labelings of `middle` in `X` and of `P` in `T R(middle)`.
pub fn factorizations_through<G: Globular2>(
    x: &G,
    g: &FreeC2<Free<'_, G>>,
    middle: &Pd2,
    bound: usize,
) -> Vec<Factorization2<G::C0, G::C1, G::C2>> {
    let r = pd_realize(middle);
    let inner = middle.width().max(middle.cells());
    let es = labelings_of_shape(&Free(&r.globular), &g.shape, inner);
    let mut out = Vec::new();
    for f in labelings_of_shape(x, middle, bound) {
        for e in &es {
            if &recompose(e, &f) == g {
                out.push(Factorization2 { middle: middle.clone(), e: e.clone(), f: f.clone() });
            }
        }
    }
    out
}

/// Smallest 2-cell count of a middle shape (width and cells `≤ bound`)
/// through which `g` factors.
pub fn minimal_middle_cells<G: Globular2>(x: &G, g: &FreeC2<Free<'_, G>>, bound: usize) -> Option<usize> {
    Pd2::bounded(bound, bound).into_iter().filter(|m| !factorizations_through(x, g, m, bound).is_empty()).map(|m| m.cells()).min()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `x → y → z` with `α: f ⇒ g`, `β: g ⇒ h`, `γ: k ⇒ l` and `δ: l ⇒ m`.
    fn staircase() -> GlobularSet2 {
        GlobularSet2 {
            cells0: vec!["x".into(), "y".into(), "z".into()],
            cells1: ["f", "g", "h", "k", "l", "m"].map(String::from).to_vec(),
            cells2: ["α", "β", "γ", "δ"].map(String::from).to_vec(),
            s1: vec![0, 0, 0, 1, 1, 1],
            t1: vec![1, 1, 1, 2, 2, 2],
            s2: vec![0, 1, 3, 4],
            t2: vec![1, 2, 4, 5],
        }
    }

    fn single(x: &GlobularSet2, inner: RealCell) -> FreeC2<Free<'_, GlobularSet2>> {
        eta2(&Free(x), &inner)
    }

    fn cell_of_shape(x: &GlobularSet2, h: &[usize], pick: usize) -> RealCell {
        labelings_of_shape(x, &Pd2::new(h.to_vec()), 4).swap_remove(pick)
    }

    #[test]
    fn single_cells_factor_through_their_own_shape() {
        let x = staircase();
        for a in 0..4 {
            let g = single(&x, eta2(&x, &a));
            let fac = arity_factorize2(&x, &g).unwrap();
            assert_eq!(fac.middle, Pd2::new(vec![1]));
            assert_eq!(recompose(&fac.e, &fac.f), g);
        }
    }

    #[test]
    fn one_cell_sent_to_a_wide_diagram() {
        let x = staircase();
        let wide = cell_of_shape(&x, &[1, 2], 0);
        let g = single(&x, wide.clone());
        let fac = arity_factorize2(&x, &g).unwrap();
        assert_eq!(fac.middle, Pd2::new(vec![1, 2]));
        assert_eq!(fac.f, wide);
        assert_eq!(recompose(&fac.e, &fac.f), g);
        assert_eq!(minimal_middle_cells(&x, &g, 3), Some(3));
    }

    #[test]
    fn bare_column_widens() {
        let x = staircase();
        // P = (0), labelled by the path f;k
        let path = Path1 { start: 0usize, edges: vec![0usize, 3] };
        let g = Labeling {
            shape: Pd2::new(vec![0]),
            vertices: vec![0, 2],
            columns: vec![Column { rails: vec![path], cells: Vec::new() }],
        };
        let fac = arity_factorize2(&x, &g).unwrap();
        assert_eq!(fac.middle, Pd2::new(vec![0, 0]));
        assert_eq!(recompose(&fac.e, &fac.f), g);
        assert_eq!(minimal_middle_cells(&x, &g, 2), Some(0));
    }

    #[test]
    fn factorization_is_exact_and_minimal_on_small_shapes() {
        let x = staircase();
        let fx = Free(&x);
        let mut checked = 0;
        for p in Pd2::bounded(2, 1) {
            for g in labelings_of_shape(&fx, &p, 2) {
                let fac = arity_factorize2(&x, &g).unwrap();
                assert_eq!(recompose(&fac.e, &fac.f), g);
                assert_eq!(minimal_middle_cells(&x, &g, 3), Some(fac.middle.cells()));
                checked += 1;
            }
        }
        assert!(checked > 50, "{checked}");
    }

    #[test]
    fn malformed_input_is_rejected() {
        let x = staircase();
        let mut g = single(&x, eta2(&x, &0));
        g.vertices[1] = 2;
        assert_eq!(arity_factorize2(&x, &g).unwrap_err(), Factorize2Error::Malformed);
    }
}
