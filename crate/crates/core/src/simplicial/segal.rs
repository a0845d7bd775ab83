use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use super::delta::MonotoneMap;
use super::sset::TruncSimplicialSet;
use crate::cat::{ArrowData, CategoryViolation, FinCategory};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SegalFailureKind {
    /// Two simplices with the same pair of faces.
    NotInjective { first: usize, second: usize },
    /// A matching pair with no simplex over it.
    NotSurjective { left: usize, right: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegalWitness {
    pub p: usize,
    pub q: usize,
    pub kind: SegalFailureKind,
}

impl SegalWitness {
    pub fn describe(&self, x: &TruncSimplicialSet) -> String {
        let (p, q) = (self.p, self.q);
        match self.kind {
            SegalFailureKind::NotInjective { first, second } => format!(
                "({p},{q}): simplices `{}` and `{}` of X_{} share both faces",
                x.levels[p + q][first],
                x.levels[p + q][second],
                p + q
            ),
            SegalFailureKind::NotSurjective { left, right } => {
                format!("({p},{q}): no simplex of X_{} over the pair (`{}`, `{}`)", p + q, x.levels[p][left], x.levels[q][right])
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegalReport {
    pub holds: bool,
    /// Truncation below 2: nothing to check.
    pub vacuous: bool,
    pub failure: Option<SegalWitness>,
}

/// For all `p, q ≥ 1` with `p + q ≤ N`, check that
/// `X_{p+q} → X_p ×_{X_0} X_q` (first `p` and last `q` edges) is a bijection.
pub fn segal_check(x: &TruncSimplicialSet) -> SegalReport {
    if x.n_max < 2 {
        return SegalReport { holds: true, vacuous: true, failure: None };
    }
    for total in 2..=x.n_max {
        for p in 1..total {
            let q = total - p;
            if let Some(kind) = segal_square(x, p, q) {
                return SegalReport { holds: false, vacuous: false, failure: Some(SegalWitness { p, q, kind }) };
            }
        }
    }
    SegalReport { holds: true, vacuous: false, failure: None }
}

fn segal_square(x: &TruncSimplicialSet, p: usize, q: usize) -> Option<SegalFailureKind> {
    let n = p + q;
    let first = x.eval(&MonotoneMap::shift(p, n, 0)).expect("within truncation");
    let last = x.eval(&MonotoneMap::shift(q, n, p)).expect("within truncation");
    let end_p = x.eval(&MonotoneMap::shift(0, p, p)).expect("within truncation");
    let start_q = x.eval(&MonotoneMap::shift(0, q, 0)).expect("within truncation");
    let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
    for z in 0..x.size(n) {
        if let Some(&prev) = seen.get(&(first[z], last[z])) {
            return Some(SegalFailureKind::NotInjective { first: prev, second: z });
        }
        seen.insert((first[z], last[z]), z);
    }
    for a in 0..x.size(p) {
        for b in 0..x.size(q) {
            if end_p[a] == start_q[b] && !seen.contains_key(&(a, b)) {
                return Some(SegalFailureKind::NotSurjective { left: a, right: b });
            }
        }
    }
    None
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CategorifyError {
    #[error("Segal condition fails at (p,q) = ({}, {})", .0.p, .0.q)]
    Segal(SegalWitness),
    #[error("truncation {n_max} is too low: need at least {required}")]
    TruncationTooLow { n_max: usize, required: usize },
    #[error("associativity not certified on edges ({f}, {g}, {h})")]
    Associativity { f: String, g: String, h: String },
    #[error("reconstructed table is not a category: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<CategoryViolation>),
}

/// A reconstructed category; object and arrow indices coincide with the
/// element indices of `X_0` and `X_1`.
#[derive(Debug, Clone)]
pub struct Categorified {
    pub category: FinCategory,
    /// `true` when associativity was certified through `X_3`.
    pub associativity_certified: bool,
}

/// Objects `X_0`, arrows `X_1`, composition through the `(1,1)` Segal
/// bijection, associativity certified by both decompositions of `X_3`.
pub fn categorify(x: &TruncSimplicialSet) -> Result<FinCategory, CategorifyError> {
    if x.n_max < 3 {
        return Err(CategorifyError::TruncationTooLow { n_max: x.n_max, required: 3 });
    }
    categorify_with_flag(x).map(|c| c.category)
}

/// As [`categorify`], but also accepts `N = 2`; there associativity is only
/// checked by brute force on the table and the result is flagged.
pub fn categorify_with_flag(x: &TruncSimplicialSet) -> Result<Categorified, CategorifyError> {
    if x.n_max < 2 {
        return Err(CategorifyError::TruncationTooLow { n_max: x.n_max, required: 2 });
    }
    let report = segal_check(x);
    if let Some(w) = report.failure {
        return Err(CategorifyError::Segal(w));
    }
    let objects = unique_names(&x.levels[0]);
    let names = unique_names(&x.levels[1]);
    let arrows: Vec<ArrowData> =
        (0..x.size(1)).map(|f| ArrowData { name: names[f].clone(), src: x.d(1, 1, f), tgt: x.d(1, 0, f) }).collect();
    let identities = (0..x.size(0)).map(|o| x.s(0, 0, o)).collect();
    let mut comp = HashMap::new();
    for t in 0..x.size(2) {
        comp.insert((x.d(2, 2, t), x.d(2, 0, t)), x.d(2, 1, t));
    }
    let category = FinCategory::from_parts(objects, arrows, identities, comp);
    let certified = x.n_max >= 3;
    if certified {
        for w in 0..x.size(3) {
            let front = x.d(3, 3, w); // vertices 0,1,2
            let back = x.d(3, 0, w); // vertices 1,2,3
            let e01 = x.d(2, 2, front);
            let e12 = x.d(2, 0, front);
            let e23 = x.d(2, 0, back);
            let e03 = x.d(2, 1, x.d(3, 1, w));
            let fg = category.compose(e01, e12);
            let gh = category.compose(e12, e23);
            let left = fg.and_then(|fg| category.compose(fg, e23));
            let right = gh.and_then(|gh| category.compose(e01, gh));
            if left != Some(e03) || right != Some(e03) {
                return Err(CategorifyError::Associativity {
                    f: category.arrow_name(e01).into(),
                    g: category.arrow_name(e12).into(),
                    h: category.arrow_name(e23).into(),
                });
            }
        }
    }
    let violations = category.validate();
    if !violations.is_empty() {
        return Err(CategorifyError::Invalid(violations));
    }
    Ok(Categorified { category, associativity_certified: certified })
}

fn unique_names(labels: &[String]) -> Vec<String> {
    let mut count: HashMap<&str, usize> = HashMap::new();
    for l in labels {
        *count.entry(l).or_default() += 1;
    }
    labels.iter().enumerate().map(|(i, l)| if count[l.as_str()] > 1 { format!("{l}#{i}") } else { l.clone() }).collect()
}

/// Level-wise bijections `x ≅ y` determined by the spine, given bijections
/// on vertices and edges, provided they commute with every face and
/// degeneracy. Used to certify `nerve(categorify(x)) ≅ x`.
pub fn spine_isomorphism(
    x: &TruncSimplicialSet,
    y: &TruncSimplicialSet,
    vertices: &[usize],
    edges: &[usize],
) -> Option<Vec<Vec<usize>>> {
    if x.n_max != y.n_max {
        return None;
    }
    let mut maps = vec![vertices.to_vec(), edges.to_vec()];
    for n in 2..=x.n_max {
        let sx = x.spine(n).ok()?;
        let sy = y.spine(n).ok()?;
        let index: HashMap<Vec<usize>, usize> = sy.into_iter().enumerate().map(|(i, s)| (s, i)).collect();
        if index.len() != y.size(n) || x.size(n) != y.size(n) {
            return None;
        }
        let mut map = Vec::with_capacity(x.size(n));
        for s in sx {
            let image: Vec<usize> = s.iter().map(|&e| edges[e]).collect();
            map.push(*index.get(&image)?);
        }
        maps.push(map);
    }
    for (n, map) in maps.iter().enumerate().take(x.n_max + 1) {
        let mut sorted = map.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != y.size(n) || map.len() != x.size(n) {
            return None;
        }
    }
    for n in 1..=x.n_max {
        for i in 0..=n {
            for z in 0..x.size(n) {
                if maps[n - 1][x.d(n, i, z)] != y.d(n, i, maps[n][z]) {
                    return None;
                }
            }
        }
    }
    for n in 0..x.n_max {
        for j in 0..=n {
            for z in 0..x.size(n) {
                if maps[n + 1][x.s(n, j, z)] != y.s(n, j, maps[n][z]) {
                    return None;
                }
            }
        }
    }
    Some(maps)
}

impl fmt::Display for SegalReport {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.failure, self.vacuous) {
            (_, true) => write!(out, "vacuous (truncation below 2)"),
            (None, false) => write!(out, "holds"),
            (Some(w), _) => write!(out, "fails at (p,q) = ({}, {})", w.p, w.q),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::examples::*;
    use crate::cat::find_isomorphism;
    use crate::simplicial::nerve;

    #[test]
    fn nerves_satisfy_segal() {
        for c in [arrow_category(), linear_order(3), discrete(2)] {
            assert!(segal_check(&nerve(&c, 4)).holds);
        }
    }

    #[test]
    fn round_trip_on_arrow_category() {
        let c = arrow_category();
        let x = nerve(&c, 3);
        let back = categorify(&x).unwrap();
        assert!(find_isomorphism(&c, &back).is_some());
        let y = nerve(&back, 3);
        let ids: Vec<usize> = (0..x.size(0)).collect();
        let es: Vec<usize> = (0..x.size(1)).collect();
        assert!(spine_isomorphism(&x, &y, &ids, &es).is_some());
    }

    #[test]
    fn truncation_two_is_flagged() {
        let x = nerve(&linear_order(3), 2);
        assert!(matches!(categorify(&x), Err(CategorifyError::TruncationTooLow { .. })));
        let flagged = categorify_with_flag(&x).unwrap();
        assert!(!flagged.associativity_certified);
    }

    /// Remove every 2-simplex that is not degenerate: the composable pair of
    /// nondegenerate edges loses its filler.
    #[test]
    fn missing_filler_fails_at_one_one() {
        let x = truncate_to_two_skeleton_without_fillers(&linear_order(3));
        assert!(x.validate().is_empty());
        let report = segal_check(&x);
        let w = report.failure.unwrap();
        assert_eq!((w.p, w.q), (1, 1));
        assert!(matches!(w.kind, SegalFailureKind::NotSurjective { .. }));
        assert!(matches!(categorify_with_flag(&x), Err(CategorifyError::Segal(_))));
    }

    /// Duplicate one nondegenerate 2-simplex: injectivity fails.
    #[test]
    fn doubled_filler_fails_injectivity() {
        let mut x = nerve(&linear_order(3), 2);
        let t = x.nondegenerate(2)[0];
        let label = format!("{}'", x.levels[2][t]);
        x.levels[2].push(label);
        for i in 0..=2 {
            let v = x.faces[2][i][t];
            x.faces[2][i].push(v);
        }
        assert!(x.validate().is_empty());
        let w = segal_check(&x).failure.unwrap();
        assert_eq!((w.p, w.q), (1, 1));
        assert!(matches!(w.kind, SegalFailureKind::NotInjective { .. }));
    }

    fn truncate_to_two_skeleton_without_fillers(c: &FinCategory) -> TruncSimplicialSet {
        let mut x = nerve(c, 2);
        let keep: Vec<usize> = (0..x.size(2)).filter(|&t| x.degenerate_flags(2)[t]).collect();
        let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &t)| (t, i)).collect();
        x.levels[2] = keep.iter().map(|&t| x.levels[2][t].clone()).collect();
        for i in 0..=2 {
            x.faces[2][i] = keep.iter().map(|&t| x.faces[2][i][t]).collect();
        }
        for j in 0..=1 {
            x.degens[1][j] = x.degens[1][j].iter().map(|t| pos[t]).collect();
        }
        x
    }
}
