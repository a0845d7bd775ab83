use std::fmt;
use std::sync::Arc;

use crate::cat::{ColimitResult, FinCategory, ObjId, SetFunctor};

/// `S: C^op × C → FinSet`, given by carrier sizes and the two partial
/// actions. For `f: c → c'`:
/// `left[f][d]: S(c', d) → S(c, d)` and `right[f][d]: S(d, c) → S(d, c')`.
#[derive(Debug, Clone)]
pub struct MixedVarianceFunctor {
    pub base: Arc<FinCategory>,
    pub sizes: Vec<Vec<usize>>,
    pub left: Vec<Vec<Vec<usize>>>,
    pub right: Vec<Vec<Vec<usize>>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MixedViolation {
    Shape,
    LeftFunctoriality { f: String, g: String },
    RightFunctoriality { f: String, g: String },
    Identity { object: String },
    Interchange { f: String, g: String },
}

impl fmt::Display for MixedViolation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Shape => write!(out, "actions have the wrong shape"),
            Self::LeftFunctoriality { f, g } => write!(out, "contravariant leg not functorial on {f};{g}"),
            Self::RightFunctoriality { f, g } => write!(out, "covariant leg not functorial on {f};{g}"),
            Self::Identity { object } => write!(out, "identity on {object} acts nontrivially"),
            Self::Interchange { f, g } => write!(out, "legs along {f} and {g} do not commute"),
        }
    }
}

impl MixedVarianceFunctor {
    /// `S(c, c') = P(c) × F(c')` for a presheaf `P` (a functor on `C^op`)
    /// and a functor `F` on `C`. Pairs `(p, x)` are indexed `p·|F c'| + x`.
    pub fn product(presheaf: &SetFunctor, functor: &SetFunctor) -> Self {
        let c = functor.base.clone();
        let k = c.num_objects();
        let sizes: Vec<Vec<usize>> = (0..k).map(|a| (0..k).map(|b| presheaf.size(a) * functor.size(b)).collect()).collect();
        let left = (0..c.num_arrows())
            .map(|f| {
                let t = c.tgt(f);
                (0..k)
                    .map(|d| {
                        let fd = functor.size(d);
                        (0..sizes[t][d]).map(|ix| presheaf.apply(f, ix / fd) * fd + ix % fd).collect()
                    })
                    .collect()
            })
            .collect();
        let right = (0..c.num_arrows())
            .map(|f| {
                let (s, t) = (c.src(f), c.tgt(f));
                (0..k)
                    .map(|d| {
                        let (fs, ft) = (functor.size(s), functor.size(t));
                        (0..sizes[d][s]).map(|ix| (ix / fs) * ft + functor.apply(f, ix % fs)).collect()
                    })
                    .collect()
            })
            .collect();
        MixedVarianceFunctor { base: c, sizes, left, right }
    }

    pub fn validate(&self) -> Vec<MixedViolation> {
        let c = &*self.base;
        let k = c.num_objects();
        let n = c.num_arrows();
        if self.sizes.len() != k || self.left.len() != n || self.right.len() != n {
            return vec![MixedViolation::Shape];
        }
        for f in 0..n {
            let (s, t) = (c.src(f), c.tgt(f));
            for d in 0..k {
                let l = &self.left[f][d];
                let r = &self.right[f][d];
                if l.len() != self.sizes[t][d]
                    || l.iter().any(|&y| y >= self.sizes[s][d])
                    || r.len() != self.sizes[d][s]
                    || r.iter().any(|&y| y >= self.sizes[d][t])
                {
                    return vec![MixedViolation::Shape];
                }
            }
        }
        let mut out = Vec::new();
        for o in 0..k {
            let id = c.identity(o);
            let trivial = |m: &Vec<usize>| m.iter().enumerate().all(|(x, &y)| x == y);
            if !(0..k).all(|d| trivial(&self.left[id][d]) && trivial(&self.right[id][d])) {
                out.push(MixedViolation::Identity { object: c.object_name(o).into() });
            }
        }
        let name = |f| c.arrow_name(f).to_string();
        for (f, g, h) in c.sorted_composites() {
            // contravariant: S(h) = S(f) ∘ S(g) read backwards
            let left_ok =
                (0..k).all(|d| (0..self.sizes[c.tgt(g)][d]).all(|x| self.left[f][d][self.left[g][d][x]] == self.left[h][d][x]));
            if !left_ok {
                out.push(MixedViolation::LeftFunctoriality { f: name(f), g: name(g) });
            }
            let right_ok = (0..k)
                .all(|d| (0..self.sizes[d][c.src(f)]).all(|x| self.right[g][d][self.right[f][d][x]] == self.right[h][d][x]));
            if !right_ok {
                out.push(MixedViolation::RightFunctoriality { f: name(f), g: name(g) });
            }
        }
        for f in 0..c.num_arrows() {
            for g in 0..c.num_arrows() {
                // f: a → a' on the left, g: b → b' on the right, from S(a', b)
                let (a, a2, b, b2) = (c.src(f), c.tgt(f), c.src(g), c.tgt(g));
                let ok = (0..self.sizes[a2][b])
                    .all(|x| self.right[g][a][self.left[f][b][x]] == self.left[f][b2][self.right[g][a2][x]]);
                if !ok {
                    out.push(MixedViolation::Interchange { f: name(f), g: name(g) });
                }
            }
        }
        out
    }
}

/// `∫^c S(c,c)`: the diagonal disjoint union modulo `S(f,1)x ~ S(1,f)x`
/// for every `f: c → c'` and `x ∈ S(c', c)`.
pub fn coend_set(s: &MixedVarianceFunctor) -> ColimitResult {
    let c = &*s.base;
    let diag: Vec<usize> = (0..c.num_objects()).map(|o| s.sizes[o][o]).collect();
    let relations = (0..c.num_arrows()).flat_map(|f| {
        let (a, b) = (c.src(f), c.tgt(f));
        (0..s.sizes[b][a]).map(move |x| ((a as ObjId, s.left[f][a][x]), (b as ObjId, s.right[f][b][x])))
    });
    ColimitResult::quotient(&diag, relations)
}

/// Every cowedge into `{0..target}`: families `w_c: S(c,c) → target` with
/// `w_c ∘ S(f,1) = w_{c'} ∘ S(1,f)`. Exponential; for small certificates.
pub fn enumerate_cowedges(s: &MixedVarianceFunctor, target: usize) -> Vec<Vec<Vec<usize>>> {
    let c = &*s.base;
    let diag: Vec<usize> = (0..c.num_objects()).map(|o| s.sizes[o][o]).collect();
    let total: usize = diag.iter().sum();
    let mut out = Vec::new();
    if target == 0 && total > 0 {
        return out;
    }
    let mut flat = vec![0; total];
    loop {
        let mut w = Vec::new();
        let mut at = 0;
        for &d in &diag {
            w.push(flat[at..at + d].to_vec());
            at += d;
        }
        let ok = (0..c.num_arrows()).all(|f| {
            let (a, b) = (c.src(f), c.tgt(f));
            (0..s.sizes[b][a]).all(|x| w[a][s.left[f][a][x]] == w[b][s.right[f][b][x]])
        });
        if ok {
            out.push(w);
        }
        let mut i = 0;
        while i < total && flat[i] + 1 == target {
            flat[i] = 0;
            i += 1;
        }
        if i == total {
            break;
        }
        flat[i] += 1;
    }
    out
}

/// Whether `result` is a universal cowedge against all cowedges into sets
/// of size `≤ max_target`: each factors uniquely through the apex.
pub fn is_universal_cowedge(s: &MixedVarianceFunctor, result: &ColimitResult, max_target: usize) -> bool {
    let c = &*s.base;
    let is_cowedge = (0..c.num_arrows()).all(|f| {
        let (a, b) = (c.src(f), c.tgt(f));
        (0..s.sizes[b][a]).all(|x| result.class_of(a, s.left[f][a][x]) == result.class_of(b, s.right[f][b][x]))
    });
    if !is_cowedge {
        return false;
    }
    for target in 0..=max_target {
        for w in enumerate_cowedges(s, target) {
            let mut factor = vec![usize::MAX; result.size()];
            for (o, wo) in w.iter().enumerate() {
                for (x, &y) in wo.iter().enumerate() {
                    let cls = result.class_of(o, x);
                    if factor[cls] != usize::MAX && factor[cls] != y {
                        return false;
                    }
                    factor[cls] = y;
                }
            }
            // every class has a member, so the factorization is unique
            if factor.contains(&usize::MAX) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::examples::*;

    /// `S(c,c') = 1 × F(c')` for `F` acting trivially.
    fn diagonal_only(c: FinCategory, sizes: Vec<usize>) -> MixedVarianceFunctor {
        let c = Arc::new(c);
        let p = SetFunctor::constant(Arc::new(c.opposite()), 1);
        let f = SetFunctor::with_sizes(c.clone(), &sizes, (0..c.num_arrows()).map(|a| (0..sizes[c.src(a)]).collect()).collect());
        MixedVarianceFunctor::product(&p, &f)
    }

    #[test]
    fn discrete_base_is_disjoint_union_of_diagonals() {
        let s = diagonal_only(discrete(2), vec![2, 3]);
        assert!(s.validate().is_empty());
        let r = coend_set(&s);
        assert_eq!(r.size(), 5);
        assert!(is_universal_cowedge(&s, &r, 2));
    }

    #[test]
    fn constant_singleton_gives_a_point() {
        let c = Arc::new(linear_order(3));
        let s = MixedVarianceFunctor::product(&SetFunctor::constant(Arc::new(c.opposite()), 1), &SetFunctor::constant(c, 1));
        assert!(s.validate().is_empty());
        assert_eq!(coend_set(&s).size(), 1);
    }

    #[test]
    fn shared_bijection_identifies_pairwise() {
        // base a → b; S(x, y) = {0, 1} everywhere, both legs of the arrow
        // act by the swap, identities trivially
        let c = Arc::new(arrow_category());
        let f = c.arrow_id("0<1").unwrap();
        let swap = vec![1, 0];
        let id = vec![0, 1];
        let mut left = vec![vec![id.clone(), id.clone()]; 3];
        let mut right = left.clone();
        left[f] = vec![swap.clone(), swap.clone()];
        right[f] = vec![swap.clone(), swap];
        let s = MixedVarianceFunctor { base: c.clone(), sizes: vec![vec![2, 2], vec![2, 2]], left, right };
        assert!(s.validate().is_empty());
        let r = coend_set(&s);
        // x ∈ S(b,a): left gives swap(x) ∈ S(a,a), right gives swap(x) ∈ S(b,b)
        assert_eq!(r.size(), 2);
        let (a, b) = (c.object_id("0").unwrap(), c.object_id("1").unwrap());
        for x in 0..2 {
            assert_eq!(r.class_of(a, x), r.class_of(b, x));
        }
        assert!(is_universal_cowedge(&s, &r, 3));
    }

    #[test]
    fn broken_interchange_is_reported() {
        let c = Arc::new(arrow_category());
        let f = c.arrow_id("0<1").unwrap();
        let id = vec![0, 1];
        let mut left = vec![vec![id.clone(), id.clone()]; 3];
        let right = left.clone();
        left[f] = vec![vec![1, 0], vec![1, 0]];
        let s = MixedVarianceFunctor { base: c, sizes: vec![vec![2, 2], vec![2, 2]], left, right };
        assert!(s.validate().is_empty());
        let mut t = s.clone();
        t.right[f] = vec![vec![0, 0], vec![0, 0]];
        assert!(t.validate().iter().any(|v| matches!(v, MixedViolation::Interchange { .. })));
    }
}
