use super::category::{ArrowId, FinCategory, ObjId};

/// An isomorphism of categories as a pair of bijections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoryIso {
    pub objects: Vec<ObjId>,
    pub arrows: Vec<ArrowId>,
}

/// Search for an isomorphism `c ≅ d` by backtracking, first over objects
/// (pruned by hom-set sizes), then over arrows (pruned by composites).
/// Candidates with matching names are tried first.
pub fn find_isomorphism(c: &FinCategory, d: &FinCategory) -> Option<CategoryIso> {
    if c.num_objects() != d.num_objects() || c.num_arrows() != d.num_arrows() {
        return None;
    }
    let n = c.num_objects();
    let hc = hom_sizes(c);
    let hd = hom_sizes(d);
    let mut objects = vec![usize::MAX; n];
    let mut used = vec![false; n];
    object_search(c, d, &hc, &hd, 0, &mut objects, &mut used)
}

fn hom_sizes(c: &FinCategory) -> Vec<Vec<usize>> {
    let n = c.num_objects();
    let mut h = vec![vec![0; n]; n];
    for a in c.arrows() {
        h[a.src][a.tgt] += 1;
    }
    h
}

fn object_search(
    c: &FinCategory,
    d: &FinCategory,
    hc: &[Vec<usize>],
    hd: &[Vec<usize>],
    i: usize,
    objects: &mut Vec<ObjId>,
    used: &mut Vec<bool>,
) -> Option<CategoryIso> {
    let n = c.num_objects();
    if i == n {
        return arrow_phase(c, d, objects);
    }
    let mut candidates: Vec<ObjId> = (0..n).filter(|&o| !used[o]).collect();
    candidates.sort_by_key(|&o| d.object_name(o) != c.object_name(i));
    for o in candidates {
        let fits = (0..=i).all(|j| {
            let oj = if j == i { o } else { objects[j] };
            hc[i][j] == hd[o][oj] && hc[j][i] == hd[oj][o]
        });
        if !fits {
            continue;
        }
        objects[i] = o;
        used[o] = true;
        if let Some(iso) = object_search(c, d, hc, hd, i + 1, objects, used) {
            return Some(iso);
        }
        used[o] = false;
    }
    objects[i] = usize::MAX;
    None
}

fn arrow_phase(c: &FinCategory, d: &FinCategory, objects: &[ObjId]) -> Option<CategoryIso> {
    let mut arrows = vec![usize::MAX; c.num_arrows()];
    let mut used = vec![false; d.num_arrows()];
    for o in 0..c.num_objects() {
        let (a, b) = (c.identity(o), d.identity(objects[o]));
        arrows[a] = b;
        used[b] = true;
    }
    let order: Vec<ArrowId> = (0..c.num_arrows()).filter(|&f| arrows[f] == usize::MAX).collect();
    if arrow_search(c, d, objects, &order, 0, &mut arrows, &mut used) {
        Some(CategoryIso { objects: objects.to_vec(), arrows })
    } else {
        None
    }
}

fn arrow_search(
    c: &FinCategory,
    d: &FinCategory,
    objects: &[ObjId],
    order: &[ArrowId],
    k: usize,
    arrows: &mut Vec<ArrowId>,
    used: &mut Vec<bool>,
) -> bool {
    if k == order.len() {
        return c.composition_table().iter().all(|(&(f, g), &h)| d.compose(arrows[f], arrows[g]) == Some(arrows[h]));
    }
    let f = order[k];
    let mut candidates: Vec<ArrowId> = d.hom(objects[c.src(f)], objects[c.tgt(f)]).into_iter().filter(|&g| !used[g]).collect();
    candidates.sort_by_key(|&g| d.arrow_name(g) != c.arrow_name(f));
    for g in candidates {
        arrows[f] = g;
        let consistent = consistent_with(c, d, f, arrows);
        if consistent {
            used[g] = true;
            if arrow_search(c, d, objects, order, k + 1, arrows, used) {
                return true;
            }
            used[g] = false;
        }
    }
    arrows[f] = usize::MAX;
    false
}

/// Check every composite involving `f` whose three arrows are assigned.
fn consistent_with(c: &FinCategory, d: &FinCategory, f: ArrowId, arrows: &[ArrowId]) -> bool {
    let check = |x: ArrowId, y: ArrowId| -> bool {
        let Some(z) = c.compose(x, y) else { return true };
        let (ax, ay, az) = (arrows[x], arrows[y], arrows[z]);
        ax == usize::MAX || ay == usize::MAX || az == usize::MAX || d.compose(ax, ay) == Some(az)
    };
    for g in c.arrows_from(c.tgt(f)) {
        if !check(f, g) {
            return false;
        }
    }
    for g in c.arrows_into(c.src(f)) {
        if !check(g, f) {
            return false;
        }
    }
    // f may also be the composite of two assigned arrows
    for (&(x, y), &z) in c.composition_table() {
        if z == f && !check(x, y) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use std::collections::HashMap;

    use super::super::category::examples::*;
    use super::super::category::ArrowData;
    use super::*;

    fn rename(c: &FinCategory, perm: &[usize]) -> FinCategory {
        // permute arrow order and rename everything
        let inv: Vec<usize> = {
            let mut v = vec![0; perm.len()];
            for (i, &p) in perm.iter().enumerate() {
                v[p] = i;
            }
            v
        };
        let arrows = (0..c.num_arrows())
            .map(|new| {
                let old = inv[new];
                let a = c.arrow(old);
                ArrowData { name: format!("r{new}"), src: a.src, tgt: a.tgt }
            })
            .collect();
        let identities = c.identities().iter().map(|&a| perm[a]).collect();
        let comp: HashMap<_, _> = c.composition_table().iter().map(|(&(f, g), &h)| ((perm[f], perm[g]), perm[h])).collect();
        let objects = c.objects().iter().map(|o| format!("o{o}")).collect();
        FinCategory::from_parts(objects, arrows, identities, comp)
    }

    #[test]
    fn renamed_category_is_isomorphic() {
        let c = linear_order(3);
        let perm: Vec<usize> = (0..c.num_arrows()).rev().collect();
        let d = rename(&c, &perm);
        assert!(d.is_valid());
        let iso = find_isomorphism(&c, &d).expect("isomorphic");
        for (&(f, g), &h) in c.composition_table() {
            assert_eq!(d.compose(iso.arrows[f], iso.arrows[g]), Some(iso.arrows[h]));
        }
    }

    #[test]
    fn distinguishes_non_isomorphic_monoids() {
        // Z/2 versus the idempotent monoid {1, e}
        let z2 = monoid(&["1", "t"], &[vec![0, 1], vec![1, 0]], 0);
        let idem = monoid(&["1", "e"], &[vec![0, 1], vec![1, 1]], 0);
        assert!(find_isomorphism(&z2, &idem).is_none());
        assert!(find_isomorphism(&z2, &z2).is_some());
    }

    #[test]
    fn linear_order_not_iso_to_discrete_plus_arrow() {
        assert!(find_isomorphism(&linear_order(2), &discrete(2)).is_none());
    }
}
