use std::fmt;
use std::sync::Arc;

use super::category::{ArrowId, FinCategory, ObjId};

/// A functor between finite categories.
#[derive(Debug, Clone)]
pub struct FinFunctor {
    pub source: Arc<FinCategory>,
    pub target: Arc<FinCategory>,
    pub objects: Vec<ObjId>,
    pub arrows: Vec<ArrowId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunctorViolation {
    Endpoints { arrow: String },
    Identity { object: String },
    Composition { f: String, g: String },
    Shape,
}

impl fmt::Display for FunctorViolation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Endpoints { arrow } => write!(out, "image of `{arrow}` has wrong endpoints"),
            Self::Identity { object } => write!(out, "identity of `{object}` not preserved"),
            Self::Composition { f, g } => write!(out, "composite of `{f}` then `{g}` not preserved"),
            Self::Shape => write!(out, "object or arrow map has the wrong length"),
        }
    }
}

impl FinFunctor {
    pub fn identity(c: Arc<FinCategory>) -> Self {
        FinFunctor {
            objects: (0..c.num_objects()).collect(),
            arrows: (0..c.num_arrows()).collect(),
            source: c.clone(),
            target: c,
        }
    }

    pub fn validate(&self) -> Vec<FunctorViolation> {
        let (c, d) = (&*self.source, &*self.target);
        if self.objects.len() != c.num_objects()
            || self.arrows.len() != c.num_arrows()
            || self.objects.iter().any(|&o| o >= d.num_objects())
            || self.arrows.iter().any(|&a| a >= d.num_arrows())
        {
            return vec![FunctorViolation::Shape];
        }
        let mut out = Vec::new();
        for f in 0..c.num_arrows() {
            let ff = self.arrows[f];
            if d.src(ff) != self.objects[c.src(f)] || d.tgt(ff) != self.objects[c.tgt(f)] {
                out.push(FunctorViolation::Endpoints { arrow: c.arrow_name(f).into() });
            }
        }
        for o in 0..c.num_objects() {
            if self.arrows[c.identity(o)] != d.identity(self.objects[o]) {
                out.push(FunctorViolation::Identity { object: c.object_name(o).into() });
            }
        }
        for (&(f, g), &h) in c.composition_table() {
            if d.compose(self.arrows[f], self.arrows[g]) != Some(self.arrows[h]) {
                out.push(FunctorViolation::Composition { f: c.arrow_name(f).into(), g: c.arrow_name(g).into() });
            }
        }
        out.sort_by_key(|v| v.to_string());
        out
    }

    /// Full and faithful: each hom-set map is a bijection.
    pub fn is_fully_faithful(&self) -> bool {
        let (c, d) = (&*self.source, &*self.target);
        for a in 0..c.num_objects() {
            for b in 0..c.num_objects() {
                let mut images: Vec<_> = c.hom(a, b).iter().map(|&f| self.arrows[f]).collect();
                images.sort_unstable();
                // no dedup: two arrows with one image break faithfulness
                if images != d.hom(self.objects[a], self.objects[b]) {
                    return false;
                }
            }
        }
        true
    }
}

/// Every functor `c → d`, by backtracking over object and arrow images.
pub fn enumerate_functors(c: &Arc<FinCategory>, d: &Arc<FinCategory>) -> Vec<FinFunctor> {
    let mut out = Vec::new();
    let n = c.num_objects();
    let mut objects = vec![0; n];
    enumerate_object_maps(c, d, 0, &mut objects, &mut out);
    out
}

fn enumerate_object_maps(
    c: &Arc<FinCategory>,
    d: &Arc<FinCategory>,
    i: usize,
    objects: &mut Vec<ObjId>,
    out: &mut Vec<FinFunctor>,
) {
    if i == c.num_objects() {
        let mut arrows = vec![usize::MAX; c.num_arrows()];
        for o in 0..c.num_objects() {
            arrows[c.identity(o)] = d.identity(objects[o]);
        }
        let order: Vec<ArrowId> = (0..c.num_arrows()).filter(|&f| !c.is_identity(f)).collect();
        enumerate_arrow_maps(c, d, objects, &order, 0, &mut arrows, out);
        return;
    }
    for o in 0..d.num_objects() {
        objects[i] = o;
        enumerate_object_maps(c, d, i + 1, objects, out);
    }
}

fn enumerate_arrow_maps(
    c: &Arc<FinCategory>,
    d: &Arc<FinCategory>,
    objects: &[ObjId],
    order: &[ArrowId],
    k: usize,
    arrows: &mut Vec<ArrowId>,
    out: &mut Vec<FinFunctor>,
) {
    if k == order.len() {
        let f = FinFunctor { source: c.clone(), target: d.clone(), objects: objects.to_vec(), arrows: arrows.clone() };
        if f.validate().is_empty() {
            out.push(f);
        }
        return;
    }
    let f = order[k];
    for g in d.hom(objects[c.src(f)], objects[c.tgt(f)]) {
        arrows[f] = g;
        // prune on composites whose three arrows are all assigned
        let consistent = c.composition_table().iter().all(|(&(x, y), &z)| {
            let (ax, ay, az) = (arrows[x], arrows[y], arrows[z]);
            ax == usize::MAX || ay == usize::MAX || az == usize::MAX || d.compose(ax, ay) == Some(az)
        });
        if consistent {
            enumerate_arrow_maps(c, d, objects, order, k + 1, arrows, out);
        }
    }
    arrows[f] = usize::MAX;
}

/// A functor from a finite category into finite sets. Carriers are labelled
/// sets; elements are referred to by index.
#[derive(Debug, Clone)]
pub struct SetFunctor {
    pub base: Arc<FinCategory>,
    pub carriers: Vec<Vec<String>>,
    pub action: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetFunctorViolation {
    Shape { arrow: String },
    Identity { object: String },
    Composition { f: String, g: String },
}

impl fmt::Display for SetFunctorViolation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Shape { arrow } => write!(out, "action of `{arrow}` is not a function between its carriers"),
            Self::Identity { object } => write!(out, "identity on `{object}` does not act trivially"),
            Self::Composition { f, g } => write!(out, "action of `{f}` then `{g}` differs from the composite's"),
        }
    }
}

impl SetFunctor {
    /// Carriers labelled `0..size`.
    pub fn with_sizes(base: Arc<FinCategory>, sizes: &[usize], action: Vec<Vec<usize>>) -> Self {
        let carriers = sizes.iter().map(|&n| (0..n).map(|i| i.to_string()).collect()).collect();
        SetFunctor { base, carriers, action }
    }

    pub fn size(&self, o: ObjId) -> usize {
        self.carriers[o].len()
    }

    pub fn apply(&self, f: ArrowId, x: usize) -> usize {
        self.action[f][x]
    }

    pub fn check_functoriality(&self) -> Vec<SetFunctorViolation> {
        let c = &*self.base;
        let mut out = Vec::new();
        if self.carriers.len() != c.num_objects() || self.action.len() != c.num_arrows() {
            return vec![SetFunctorViolation::Shape { arrow: "<all>".into() }];
        }
        for f in 0..c.num_arrows() {
            let (s, t) = (c.src(f), c.tgt(f));
            if self.action[f].len() != self.size(s) || self.action[f].iter().any(|&y| y >= self.size(t)) {
                out.push(SetFunctorViolation::Shape { arrow: c.arrow_name(f).into() });
            }
        }
        if !out.is_empty() {
            return out;
        }
        for o in 0..c.num_objects() {
            let id = c.identity(o);
            if self.action[id].iter().enumerate().any(|(x, &y)| x != y) {
                out.push(SetFunctorViolation::Identity { object: c.object_name(o).into() });
            }
        }
        for (f, g, h) in c.sorted_composites() {
            let ok = (0..self.size(c.src(f))).all(|x| self.action[g][self.action[f][x]] == self.action[h][x]);
            if !ok {
                out.push(SetFunctorViolation::Composition { f: c.arrow_name(f).into(), g: c.arrow_name(g).into() });
            }
        }
        out
    }

    /// Constant functor at a set of the given size.
    pub fn constant(base: Arc<FinCategory>, size: usize) -> Self {
        let sizes = vec![size; base.num_objects()];
        let action = vec![(0..size).collect(); base.num_arrows()];
        Self::with_sizes(base, &sizes, action)
    }

    /// Precompose with a functor `i: d → base`.
    pub fn restrict(&self, i: &FinFunctor) -> SetFunctor {
        SetFunctor {
            base: i.source.clone(),
            carriers: i.objects.iter().map(|&o| self.carriers[o].clone()).collect(),
            action: i.arrows.iter().map(|&f| self.action[f].clone()).collect(),
        }
    }
}

/// Every set-valued functor on `base` whose carriers have at most
/// `max_size` elements, carriers labelled by index.
pub fn enumerate_set_functors(base: &Arc<FinCategory>, max_size: usize) -> Vec<SetFunctor> {
    let c = &**base;
    let mut out = Vec::new();
    let k = c.num_objects();
    let mut sizes = vec![0; k];
    loop {
        let mut action: Vec<Option<Vec<usize>>> = vec![None; c.num_arrows()];
        for o in 0..k {
            action[c.identity(o)] = Some((0..sizes[o]).collect());
        }
        let free: Vec<ArrowId> = (0..c.num_arrows()).filter(|&f| !c.is_identity(f)).collect();
        let composites = c.sorted_composites();
        set_functor_search(c, &sizes, &free, 0, &composites, &mut action, &mut |act| {
            out.push(SetFunctor::with_sizes(base.clone(), &sizes, act.iter().map(|a| a.clone().unwrap()).collect()));
        });
        // next size vector
        let mut i = 0;
        while i < k && sizes[i] == max_size {
            sizes[i] = 0;
            i += 1;
        }
        if i == k {
            break;
        }
        sizes[i] += 1;
    }
    out
}

fn set_functor_search(
    c: &FinCategory,
    sizes: &[usize],
    free: &[ArrowId],
    at: usize,
    composites: &[(ArrowId, ArrowId, ArrowId)],
    action: &mut Vec<Option<Vec<usize>>>,
    emit: &mut dyn FnMut(&[Option<Vec<usize>>]),
) {
    let consistent = |action: &[Option<Vec<usize>>]| {
        composites.iter().all(|&(f, g, h)| match (&action[f], &action[g], &action[h]) {
            (Some(af), Some(ag), Some(ah)) => af.iter().zip(ah).all(|(&y, &z)| ag[y] == z),
            _ => true,
        })
    };
    if at == free.len() {
        emit(action);
        return;
    }
    let f = free[at];
    let (s, t) = (sizes[c.src(f)], sizes[c.tgt(f)]);
    if s > 0 && t == 0 {
        return;
    }
    let mut table = vec![0; s];
    loop {
        action[f] = Some(table.clone());
        if consistent(action) {
            set_functor_search(c, sizes, free, at + 1, composites, action, emit);
        }
        let mut i = 0;
        while i < s && table[i] + 1 == t {
            table[i] = 0;
            i += 1;
        }
        if i == s {
            break;
        }
        table[i] += 1;
    }
    action[f] = None;
}

/// A natural transformation between set-valued functors on the same base.
#[derive(Debug, Clone)]
pub struct NatTransform {
    pub source: SetFunctor,
    pub target: SetFunctor,
    pub components: Vec<Vec<usize>>,
}

/// One failing naturality square, with the element where it fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaturalityViolation {
    pub arrow: String,
    pub element: usize,
}

impl fmt::Display for NaturalityViolation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "naturality square of `{}` fails at element {}", self.arrow, self.element)
    }
}

impl NatTransform {
    pub fn identity(f: &SetFunctor) -> Self {
        let components = f.carriers.iter().map(|c| (0..c.len()).collect()).collect();
        NatTransform { source: f.clone(), target: f.clone(), components }
    }

    pub fn check_naturality(&self) -> Vec<NaturalityViolation> {
        naturality_violations(&self.source, &self.target, &self.components)
    }
}

pub fn naturality_violations(source: &SetFunctor, target: &SetFunctor, components: &[Vec<usize>]) -> Vec<NaturalityViolation> {
    let c = &*source.base;
    let mut out = Vec::new();
    for f in 0..c.num_arrows() {
        let (s, t) = (c.src(f), c.tgt(f));
        for x in 0..source.size(s) {
            if components[t][source.apply(f, x)] != target.apply(f, components[s][x]) {
                out.push(NaturalityViolation { arrow: c.arrow_name(f).into(), element: x });
            }
        }
    }
    out
}

/// All natural transformations `source ⇒ target`, found by assigning
/// elements one at a time and pruning on naturality squares.
pub fn enumerate_nat_transforms(source: &SetFunctor, target: &SetFunctor) -> Vec<Vec<Vec<usize>>> {
    let c = &*source.base;
    let slots: Vec<(ObjId, usize)> = (0..c.num_objects()).flat_map(|o| (0..source.size(o)).map(move |x| (o, x))).collect();
    let mut comps: Vec<Vec<usize>> = (0..c.num_objects()).map(|o| vec![usize::MAX; source.size(o)]).collect();
    let mut out = Vec::new();
    nat_search(source, target, &slots, 0, &mut comps, &mut out);
    out
}

fn nat_search(
    source: &SetFunctor,
    target: &SetFunctor,
    slots: &[(ObjId, usize)],
    k: usize,
    comps: &mut Vec<Vec<usize>>,
    out: &mut Vec<Vec<Vec<usize>>>,
) {
    if k == slots.len() {
        out.push(comps.clone());
        return;
    }
    let c = &*source.base;
    let (o, x) = slots[k];
    for y in 0..target.size(o) {
        comps[o][x] = y;
        let ok = (0..c.num_arrows()).all(|f| {
            let (s, t) = (c.src(f), c.tgt(f));
            if s == o && x < source.size(s) {
                let fx = source.apply(f, x);
                let lhs = comps[t][fx];
                lhs == usize::MAX || lhs == target.apply(f, y)
            } else {
                true
            }
        }) && (0..c.num_arrows()).all(|f| {
            let (s, t) = (c.src(f), c.tgt(f));
            if t != o {
                return true;
            }
            (0..source.size(s)).all(|z| {
                if source.apply(f, z) != x || comps[s][z] == usize::MAX {
                    true
                } else {
                    target.apply(f, comps[s][z]) == y
                }
            })
        });
        if ok {
            nat_search(source, target, slots, k + 1, comps, out);
        }
    }
    comps[o][x] = usize::MAX;
}

#[cfg(test)]
mod tests {
    use super::super::category::examples::*;
    use super::*;

    fn arrow_functor(a: usize, b: usize, map: Vec<usize>) -> SetFunctor {
        let c = Arc::new(arrow_category());
        let f = c.arrow_id("0<1").unwrap();
        let mut action = vec![Vec::new(); 3];
        action[c.identity(0)] = (0..a).collect();
        action[c.identity(1)] = (0..b).collect();
        action[f] = map;
        SetFunctor::with_sizes(c, &[a, b], action)
    }

    #[test]
    fn collapsing_a_monoid_is_full_but_not_faithful() {
        let z2 = Arc::new(monoid(&["e", "t"], &[vec![0, 1], vec![1, 0]], 0));
        let fs = enumerate_functors(&z2, &Arc::new(terminal()));
        assert_eq!(fs.len(), 1);
        assert!(!fs[0].is_fully_faithful());
    }

    #[test]
    fn identity_transformation_is_natural() {
        let f = arrow_functor(2, 1, vec![0, 0]);
        assert!(f.check_functoriality().is_empty());
        assert!(NatTransform::identity(&f).check_naturality().is_empty());
    }

    #[test]
    fn transformations_between_constants_are_natural() {
        let c = Arc::new(linear_order(3));
        let (a, b) = (SetFunctor::constant(c.clone(), 2), SetFunctor::constant(c, 3));
        for comps in [vec![vec![0, 1]; 3], vec![vec![2, 2]; 3]] {
            let t = NatTransform { source: a.clone(), target: b.clone(), components: comps };
            assert!(t.check_naturality().is_empty());
        }
    }

    #[test]
    fn perturbed_component_names_the_square() {
        let f = arrow_functor(2, 2, vec![0, 1]);
        let mut t = NatTransform::identity(&f);
        t.components[1] = vec![1, 0];
        let report = t.check_naturality();
        assert_eq!(report.len(), 2);
        assert!(report.iter().any(|v| v.arrow == "0<1" && v.element == 0));
    }

    #[test]
    fn functor_enumeration_counts() {
        // functors [1] → [2] are monotone maps on two points: 6 of them
        let c = Arc::new(linear_order(2));
        let d = Arc::new(linear_order(3));
        assert_eq!(enumerate_functors(&c, &d).len(), 6);
        assert!(FinFunctor::identity(d.clone()).is_fully_faithful());
    }

    #[test]
    fn nat_enumeration_matches_brute_force() {
        let f = arrow_functor(2, 2, vec![0, 0]);
        let g = arrow_functor(2, 2, vec![1, 0]);
        let fast = enumerate_nat_transforms(&f, &g).len();
        let mut brute = 0;
        for code in 0..16usize {
            let comps = vec![vec![code & 1, (code >> 1) & 1], vec![(code >> 2) & 1, (code >> 3) & 1]];
            if naturality_violations(&f, &g, &comps).is_empty() {
                brute += 1;
            }
        }
        assert_eq!(fast, brute);
    }
}
