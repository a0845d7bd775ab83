use petgraph::unionfind::UnionFind;

use super::category::ObjId;
use super::functor::SetFunctor;

/// A colimit of finite sets presented as a quotient of a disjoint union.
///
/// Classes are numbered by their minimal member in the flattened disjoint
/// union, so the numbering is reproducible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColimitResult {
    /// For each class, its minimal representative `(object, element)`.
    pub apex: Vec<(ObjId, usize)>,
    /// `injections[o][x]` is the class of element `x` over object `o`.
    pub injections: Vec<Vec<usize>>,
}

impl ColimitResult {
    pub fn size(&self) -> usize {
        self.apex.len()
    }

    pub fn class_of(&self, o: ObjId, x: usize) -> usize {
        self.injections[o][x]
    }

    /// Build from carrier sizes and a list of generating identifications.
    pub fn quotient(sizes: &[usize], relations: impl IntoIterator<Item = ((ObjId, usize), (ObjId, usize))>) -> Self {
        let mut offsets = Vec::with_capacity(sizes.len());
        let mut total = 0;
        for &s in sizes {
            offsets.push(total);
            total += s;
        }
        let mut uf = UnionFind::<usize>::new(total);
        for ((a, x), (b, y)) in relations {
            uf.union(offsets[a] + x, offsets[b] + y);
        }
        let mut class_of_root = vec![usize::MAX; total];
        let mut apex = Vec::new();
        let mut injections = Vec::with_capacity(sizes.len());
        for (o, &s) in sizes.iter().enumerate() {
            let mut inj = Vec::with_capacity(s);
            for x in 0..s {
                let r = uf.find_mut(offsets[o] + x);
                if class_of_root[r] == usize::MAX {
                    class_of_root[r] = apex.len();
                    apex.push((o, x));
                }
                inj.push(class_of_root[r]);
            }
            injections.push(inj);
        }
        ColimitResult { apex, injections }
    }
}

/// Colimit of a set-valued functor: the coequalizer of the two maps from the
/// arrow-indexed disjoint union to the object-indexed one.
pub fn colimit_set_functor(f: &SetFunctor) -> ColimitResult {
    let c = &*f.base;
    let sizes: Vec<usize> = (0..c.num_objects()).map(|o| f.size(o)).collect();
    let relations = (0..c.num_arrows()).flat_map(|a| {
        let (s, t) = (c.src(a), c.tgt(a));
        (0..f.size(s)).map(move |x| ((s, x), (t, f.apply(a, x))))
    });
    ColimitResult::quotient(&sizes, relations)
}
