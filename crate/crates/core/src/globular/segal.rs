use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::arity::{KleisliMap, RealCell};
use super::globset::*;
use super::pd::{pd_realize, Pd2, Realization};
use crate::cat::{ArrowData, ArrowId, FinCategory, FinFunctor, ObjId, SetFunctor};

/// A morphism `R(P) → T G` out of a realization.
pub type IntoFree<G> = Labeling<<G as Globular2>::C0, FreeC1<G>, FreeC2<G>>;

pub fn shape_name(p: &Pd2) -> String {
    let hs: Vec<String> = p.heights.iter().map(|h| h.to_string()).collect();
    format!("({})", hs.join(","))
}

/// The identity of `R(P)` as a labeling.
pub fn identity_labeling(r: &Realization) -> RealCell {
    Labeling {
        shape: r.shape.clone(),
        vertices: (0..=r.shape.width()).collect(),
        columns: r.rails.iter().zip(&r.cells).map(|(rs, cs)| Column { rails: rs.clone(), cells: cs.clone() }).collect(),
    }
}

/// `a` followed by `b` in the Kleisli category: `μ ∘ T b ∘ a`.
pub fn kleisli_then<G: Globular2>(g: &G, a: &KleisliMap, b: &IntoFree<G>) -> IntoFree<G> {
    let t = b.tables();
    a.map(
        &|&v| t.0[v].clone(),
        &|p| mu1(&Path1 { start: t.0[p.start].clone(), edges: p.edges.iter().map(|&r| t.1[r].clone()).collect() }),
        &|d| mu2_substitute(g, &relabel(d, &t)),
    )
}

/// Truncations of the category `pd₀` of pasting diagrams with globular
/// morphisms and of the Kleisli category `fpd` on the same shapes, with the
/// inclusion `l` given by `η`.
#[derive(Debug, Clone)]
pub struct PdSite {
    pub shapes: Vec<Pd2>,
    pub realizations: Vec<Realization>,
    pub pd0: Arc<FinCategory>,
    pub pd0_op: Arc<FinCategory>,
    pub pd0_maps: Vec<RealCell>,
    pub fpd: Arc<FinCategory>,
    pub fpd_op: Arc<FinCategory>,
    pub fpd_maps: Vec<KleisliMap>,
    pub l: FinFunctor,
    pd0_index: HashMap<(ObjId, ObjId, RealCell), ArrowId>,
}

fn build_category<M: Clone + Eq + std::hash::Hash>(
    shapes: &[Pd2],
    homs: impl Fn(usize, usize) -> Vec<M>,
    identity: impl Fn(usize) -> M,
    compose: impl Fn(&M, &M, usize) -> M,
) -> (FinCategory, Vec<M>, HashMap<(ObjId, ObjId, M), ArrowId>) {
    let n = shapes.len();
    let mut maps = Vec::new();
    let mut arrows = Vec::new();
    let mut index = HashMap::new();
    for q in 0..n {
        for p in 0..n {
            for (k, m) in homs(q, p).into_iter().enumerate() {
                index.insert((q, p, m.clone()), maps.len());
                arrows.push(ArrowData {
                    name: format!("{}>{}#{k}", shape_name(&shapes[q]), shape_name(&shapes[p])),
                    src: q,
                    tgt: p,
                });
                maps.push(m);
            }
        }
    }
    let identities = (0..n).map(|o| index[&(o, o, identity(o))]).collect();
    let mut comp = HashMap::new();
    for (i, a) in maps.iter().enumerate() {
        for (j, b) in maps.iter().enumerate() {
            if arrows[i].tgt == arrows[j].src {
                let c = compose(a, b, arrows[j].tgt);
                let key = (arrows[i].src, arrows[j].tgt, c);
                comp.insert((i, j), *index.get(&key).expect("composite within the truncation"));
            }
        }
    }
    let objects = shapes.iter().map(shape_name).collect();
    (FinCategory::from_parts(objects, arrows, identities, comp), maps, index)
}

/// Shapes of width `≤ max_width` with `≤ max_cells` 2-cells.
pub fn pd_site(max_width: usize, max_cells: usize) -> PdSite {
    let shapes = Pd2::bounded(max_width, max_cells);
    let realizations: Vec<Realization> = shapes.iter().map(pd_realize).collect();
    let rs = &realizations;
    let (pd0, pd0_maps, pd0_index) = build_category(
        &shapes,
        |q, p| labelings_of_shape(&rs[p].globular, &shapes[q], 0),
        |o| identity_labeling(&rs[o]),
        |a, b, _| relabel(a, &b.tables()),
    );
    // free cells of R(P) use each of its cells at most once
    let inner = max_width.max(max_cells);
    let (fpd, fpd_maps, fpd_index) = build_category(
        &shapes,
        |q, p| labelings_of_shape(&Free(&rs[p].globular), &shapes[q], inner),
        |o| t_eta(&rs[o].globular, &identity_labeling(&rs[o])),
        |a, b, s| kleisli_then(&rs[s].globular, a, b),
    );
    let (pd0, fpd) = (Arc::new(pd0), Arc::new(fpd));
    let l_arrows = pd0_maps
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let (q, p) = (pd0.src(i), pd0.tgt(i));
            fpd_index[&(q, p, t_eta(&rs[p].globular, a))]
        })
        .collect();
    let l = FinFunctor { source: pd0.clone(), target: fpd.clone(), objects: (0..shapes.len()).collect(), arrows: l_arrows };
    PdSite {
        pd0_op: Arc::new(pd0.opposite()),
        fpd_op: Arc::new(fpd.opposite()),
        shapes,
        realizations,
        pd0,
        pd0_maps,
        fpd,
        fpd_maps,
        l,
        pd0_index,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundTooSmall {
    pub shape: Pd2,
}

impl fmt::Display for BoundTooSmall {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "an action leaves the enumerated cells at shape {}", shape_name(&self.shape))
    }
}

fn presheaf_from<T: Clone + Eq + std::hash::Hash>(
    base: &Arc<FinCategory>,
    shapes: &[Pd2],
    elements: Vec<Vec<T>>,
    act: impl Fn(ArrowId, &T) -> T,
) -> Result<SetFunctor, BoundTooSmall> {
    let index: Vec<HashMap<&T, usize>> = elements.iter().map(|es| es.iter().enumerate().map(|(i, e)| (e, i)).collect()).collect();
    let mut action = Vec::with_capacity(base.num_arrows());
    for f in 0..base.num_arrows() {
        // the site arrow Q → P is P → Q in the opposite
        let (p, q) = (base.src(f), base.tgt(f));
        let row: Option<Vec<usize>> = elements[p].iter().map(|x| index[q].get(&act(f, x)).copied()).collect();
        action.push(row.ok_or_else(|| BoundTooSmall { shape: shapes[q].clone() })?);
    }
    let carriers =
        elements.iter().zip(shapes).map(|(es, p)| (0..es.len()).map(|i| format!("{}#{i}", shape_name(p))).collect()).collect();
    Ok(SetFunctor { base: base.clone(), carriers, action })
}

/// The nerve of `T X` on `fpd^op`: `P ↦ fpd(P, X)`, acting by Kleisli
/// precomposition.
pub fn free_nerve<G: Globular2>(x: &G, site: &PdSite, bound: usize) -> Result<SetFunctor, BoundTooSmall> {
    let elements: Vec<Vec<IntoFree<G>>> = site.shapes.iter().map(|p| labelings_of_shape(&Free(x), p, bound)).collect();
    presheaf_from(&site.fpd_op, &site.shapes, elements, |f, b| kleisli_then(x, &site.fpd_maps[f], b))
}

/// `P ↦ Glob(R(P), X)` on `pd₀^op`.
pub fn glob_nerve<G: Globular2>(x: &G, site: &PdSite, bound: usize) -> Result<SetFunctor, BoundTooSmall> {
    let elements: Vec<Vec<FreeC2<G>>> = site.shapes.iter().map(|p| labelings_of_shape(x, p, bound)).collect();
    presheaf_from(&site.pd0_op, &site.shapes, elements, |f, b| relabel(&site.pd0_maps[f], &b.tables()))
}

/// `l* X` for a presheaf on `fpd^op`.
pub fn restrict_along_l(x: &SetFunctor, site: &PdSite) -> SetFunctor {
    let l_op = FinFunctor {
        source: site.pd0_op.clone(),
        target: x.base.clone(),
        objects: site.l.objects.clone(),
        arrows: site.l.arrows.clone(),
    };
    x.restrict(&l_op)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Segal2Failure {
    MissingShape(Pd2),
    NotGlobular(Vec<String>),
    NotInjective { shape: Pd2, a: usize, b: usize },
    NotSurjective { shape: Pd2, missing: usize },
}

impl fmt::Display for Segal2Failure {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::MissingShape(p) => write!(out, "truncation lacks the shape {}", shape_name(p)),
            Self::NotGlobular(v) => write!(out, "cells read off the atomic shapes are not globular: {}", v.join("; ")),
            Self::NotInjective { shape, a, b } => {
                write!(out, "elements {a} and {b} at {} have the same boundary cells", shape_name(shape))
            }
            Self::NotSurjective { shape, missing } => {
                write!(out, "{missing} labelings of {} have no filler", shape_name(shape))
            }
        }
    }
}

/// `G` with, per shape, the bijection `X(P) → Glob(R(P), G)` as indices
/// into `labelings_of_shape(G, P)`.
#[derive(Debug, Clone)]
pub struct Segal2Witness {
    pub globular: GlobularSet2,
    pub isos: Vec<Vec<usize>>,
}

impl PdSite {
    pub fn shape_id(&self, p: &Pd2) -> Option<ObjId> {
        self.shapes.iter().position(|q| q == p)
    }

    fn pd0_arrow(&self, q: ObjId, p: ObjId, m: RealCell) -> ArrowId {
        self.pd0_index[&(q, p, m)]
    }

    fn vertex_at(&self, i: usize) -> RealCell {
        Labeling { shape: Pd2::default(), vertices: vec![i], columns: Vec::new() }
    }

    fn rail_at(&self, p: ObjId, i: usize, j: usize) -> RealCell {
        let r = &self.realizations[p];
        Labeling {
            shape: Pd2::new(vec![0]),
            vertices: vec![i, i + 1],
            columns: vec![Column { rails: vec![r.rails[i][j]], cells: Vec::new() }],
        }
    }

    fn cell_at(&self, p: ObjId, i: usize, j: usize) -> RealCell {
        let r = &self.realizations[p];
        Labeling {
            shape: Pd2::new(vec![1]),
            vertices: vec![i, i + 1],
            columns: vec![Column { rails: vec![r.rails[i][j], r.rails[i][j + 1]], cells: vec![r.cells[i][j]] }],
        }
    }
}

/// Read `G` off the shapes `()`, `(0)`, `(1)` of a presheaf on `pd₀^op` and
/// check that every `X(P) → Glob(R(P), G)` is a bijection.
pub fn segal2_check_pd0(y: &SetFunctor, site: &PdSite) -> Result<Segal2Witness, Segal2Failure> {
    let atom = |h: Vec<usize>| {
        let p = Pd2::new(h);
        site.shape_id(&p).ok_or(Segal2Failure::MissingShape(p))
    };
    let (o0, o1, o2) = (atom(vec![])?, atom(vec![0])?, atom(vec![1])?);
    let act = |q: ObjId, p: ObjId, m: RealCell, x: usize| y.apply(site.pd0_arrow(q, p, m), x);
    let g = GlobularSet2 {
        cells0: y.carriers[o0].clone(),
        cells1: y.carriers[o1].clone(),
        cells2: y.carriers[o2].clone(),
        s1: (0..y.size(o1)).map(|x| act(o0, o1, site.vertex_at(0), x)).collect(),
        t1: (0..y.size(o1)).map(|x| act(o0, o1, site.vertex_at(1), x)).collect(),
        s2: (0..y.size(o2)).map(|x| act(o1, o2, site.rail_at(o2, 0, 0), x)).collect(),
        t2: (0..y.size(o2)).map(|x| act(o1, o2, site.rail_at(o2, 0, 1), x)).collect(),
    };
    let violations = g.validate();
    if !violations.is_empty() {
        return Err(Segal2Failure::NotGlobular(violations));
    }
    let mut isos = Vec::with_capacity(site.shapes.len());
    for (p, shape) in site.shapes.iter().enumerate() {
        let targets = labelings_of_shape(&g, shape, 0);
        let index: HashMap<&FreeC2<GlobularSet2>, usize> = targets.iter().enumerate().map(|(i, l)| (l, i)).collect();
        let mut hit: Vec<Option<usize>> = vec![None; targets.len()];
        let mut iso = Vec::with_capacity(y.size(p));
        for x in 0..y.size(p) {
            let l = Labeling {
                shape: shape.clone(),
                vertices: (0..=shape.width()).map(|i| act(o0, p, site.vertex_at(i), x)).collect(),
                columns: shape
                    .heights
                    .iter()
                    .enumerate()
                    .map(|(i, &k)| Column {
                        rails: (0..=k).map(|j| act(o1, p, site.rail_at(p, i, j), x)).collect(),
                        cells: (0..k).map(|j| act(o2, p, site.cell_at(p, i, j), x)).collect(),
                    })
                    .collect(),
            };
            // functoriality makes l a labeling; a broken presheaf may not
            let Some(&t) = index.get(&l) else {
                return Err(Segal2Failure::NotGlobular(vec![format!("element {x} at {}", shape_name(shape))]));
            };
            if let Some(a) = hit[t] {
                return Err(Segal2Failure::NotInjective { shape: shape.clone(), a, b: x });
            }
            hit[t] = Some(x);
            iso.push(t);
        }
        let missing = hit.iter().filter(|h| h.is_none()).count();
        if missing > 0 {
            return Err(Segal2Failure::NotSurjective { shape: shape.clone(), missing });
        }
        isos.push(iso);
    }
    Ok(Segal2Witness { globular: g, isos })
}

/// The Segal condition for a presheaf on `fpd^op`, checked on `l* X`.
pub fn segal2_check(x: &SetFunctor, site: &PdSite) -> Result<Segal2Witness, Segal2Failure> {
    segal2_check_pd0(&restrict_along_l(x, site), site)
}

/// Drop element `x` at shape `p`, keeping the rest of the presheaf. Only
/// sensible when no action lands on `x`.
pub fn remove_element(y: &SetFunctor, p: ObjId, x: usize) -> SetFunctor {
    let base = &y.base;
    let mut out = y.clone();
    out.carriers[p].remove(x);
    for f in 0..base.num_arrows() {
        let mut row = y.action[f].clone();
        if base.src(f) == p {
            row.remove(x);
        }
        if base.tgt(f) == p {
            for v in &mut row {
                if *v > x {
                    *v -= 1;
                }
            }
        }
        out.action[f] = row;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parallel() -> GlobularSet2 {
        GlobularSet2 {
            cells0: vec!["x".into(), "y".into()],
            cells1: vec!["f".into(), "g".into()],
            cells2: vec!["α".into()],
            s1: vec![0, 0],
            t1: vec![1, 1],
            s2: vec![0],
            t2: vec![1],
        }
    }

    #[test]
    fn truncated_sites_are_categories() {
        let site = pd_site(2, 2);
        assert_eq!(site.shapes.len(), 10);
        assert!(site.pd0.is_valid());
        assert!(site.fpd.is_valid());
        assert!(site.l.validate().is_empty());
        // fpd((0), (0)): the three subpaths of one arrow
        let a = site.shape_id(&Pd2::new(vec![0])).unwrap();
        assert_eq!(site.fpd.hom(a, a).len(), 3);
        assert_eq!(site.pd0.hom(a, a).len(), 1);
    }

    #[test]
    fn nerve_of_a_free_2_category_is_segal() {
        let site = pd_site(2, 2);
        let x = free_nerve(&parallel(), &site, 2).unwrap();
        assert!(x.check_functoriality().is_empty());
        let w = segal2_check(&x, &site).unwrap();
        // identities on x and y, f, g; identity 2-cells on x, y, f, g and α
        assert_eq!((w.globular.cells0.len(), w.globular.cells1.len(), w.globular.cells2.len()), (2, 4, 5));
    }

    #[test]
    fn graph_like_presheaf_has_no_2_cells() {
        let site = pd_site(2, 2);
        let graph = GlobularSet2 {
            cells0: vec!["a".into(), "b".into(), "c".into()],
            cells1: vec!["u".into(), "v".into(), "w".into()],
            s1: vec![0, 1, 0],
            t1: vec![1, 2, 1],
            ..Default::default()
        };
        let y = glob_nerve(&graph, &site, 0).unwrap();
        assert!(y.check_functoriality().is_empty());
        let w = segal2_check_pd0(&y, &site).unwrap();
        assert!(w.globular.cells2.is_empty());
        assert_eq!(w.globular.cells1.len(), 3);
    }

    #[test]
    fn missing_filler_at_a_horizontal_composite() {
        let site = pd_site(2, 2);
        let base = GlobularSet2 {
            cells0: vec!["x".into(), "y".into(), "z".into()],
            cells1: ["f", "g", "h", "k"].map(String::from).to_vec(),
            cells2: vec!["α".into(), "β".into()],
            s1: vec![0, 0, 1, 1],
            t1: vec![1, 1, 2, 2],
            s2: vec![0, 2],
            t2: vec![1, 3],
        };
        let y = glob_nerve(&base, &site, 0).unwrap();
        let p = site.shape_id(&Pd2::new(vec![1, 1])).unwrap();
        assert_eq!(y.size(p), 1);
        let broken = remove_element(&y, p, 0);
        assert!(broken.check_functoriality().is_empty());
        assert_eq!(
            segal2_check_pd0(&broken, &site).unwrap_err(),
            Segal2Failure::NotSurjective { shape: Pd2::new(vec![1, 1]), missing: 1 }
        );
    }
}
