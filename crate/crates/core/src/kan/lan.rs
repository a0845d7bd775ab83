use std::sync::Arc;

use thiserror::Error;

use super::coend::{coend_set, MixedVarianceFunctor};
use crate::cat::{ArrowId, ColimitResult, FinFunctor, ObjId, SetFunctor};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KanError {
    #[error("object {0} is not in the target category")]
    UnknownObject(ObjId),
    #[error("the functor is not defined on the source of the extension")]
    BaseMismatch,
}

/// `E(i-, e)` as a presheaf on the source of `i`: elements at `c` are the
/// arrows `i c → e` (in `E.hom` order); `f: c → c'` acts by `u ↦ i(f);u`.
pub fn hom_presheaf(i: &FinFunctor, e: ObjId) -> SetFunctor {
    let (c, d) = (&*i.source, &*i.target);
    let homs: Vec<Vec<ArrowId>> = (0..c.num_objects()).map(|o| d.hom(i.objects[o], e)).collect();
    let action = (0..c.num_arrows())
        .map(|f| {
            let (s, t) = (c.src(f), c.tgt(f));
            homs[t]
                .iter()
                .map(|&u| {
                    let v = d.compose(i.arrows[f], u).expect("composable");
                    homs[s].iter().position(|&w| w == v).expect("in hom")
                })
                .collect()
        })
        .collect();
    let carriers = homs.iter().map(|h| h.iter().map(|&u| d.arrow_name(u).to_string()).collect()).collect();
    SetFunctor { base: Arc::new(c.opposite()), carriers, action }
}

/// `(Lan_i F)(e) = ∫^c E(ic, e) × F c`.
#[derive(Debug, Clone)]
pub struct LanValue {
    pub object: ObjId,
    pub weights: SetFunctor,
    pub coend: ColimitResult,
}

impl LanValue {
    pub fn size(&self) -> usize {
        self.coend.size()
    }

    /// Class of `(c, u: ic → e, x ∈ F c)`, with `u` given as its position
    /// in `E.hom(ic, e)`.
    pub fn class_of(&self, f: &SetFunctor, c: ObjId, u: usize, x: usize) -> usize {
        self.coend.class_of(c, u * f.size(c) + x)
    }

    /// `(c, u, x)` for each class representative.
    pub fn representatives(&self, f: &SetFunctor) -> Vec<(ObjId, usize, usize)> {
        self.coend.apex.iter().map(|&(c, ix)| (c, ix / f.size(c), ix % f.size(c))).collect()
    }
}

fn check_base(f: &SetFunctor, i: &FinFunctor) -> Result<(), KanError> {
    if Arc::ptr_eq(&f.base, &i.source) || f.base.same_presentation(&i.source) {
        Ok(())
    } else {
        Err(KanError::BaseMismatch)
    }
}

/// Pointwise left Kan extension of `f` along `i`, at `e`.
pub fn pointwise_lan(f: &SetFunctor, i: &FinFunctor, e: ObjId) -> Result<LanValue, KanError> {
    check_base(f, i)?;
    if e >= i.target.num_objects() {
        return Err(KanError::UnknownObject(e));
    }
    let weights = hom_presheaf(i, e);
    let coend = coend_set(&MixedVarianceFunctor::product(&weights, f));
    Ok(LanValue { object: e, weights, coend })
}

/// `Lan_i F` as a functor on the target, with its values.
pub fn lan_functor(f: &SetFunctor, i: &FinFunctor) -> Result<(SetFunctor, Vec<LanValue>), KanError> {
    let d = &*i.target;
    let values: Vec<LanValue> = (0..d.num_objects()).map(|e| pointwise_lan(f, i, e)).collect::<Result<_, _>>()?;
    let action = (0..d.num_arrows())
        .map(|v| {
            let (e, e2) = (d.src(v), d.tgt(v));
            values[e]
                .representatives(f)
                .into_iter()
                .map(|(c, u, x)| {
                    let arrow = d.hom(i.objects[c], e)[u];
                    let moved = d.compose(arrow, v).expect("composable");
                    let u2 = d.hom(i.objects[c], e2).iter().position(|&w| w == moved).expect("in hom");
                    values[e2].class_of(f, c, u2, x)
                })
                .collect()
        })
        .collect();
    let carriers = values
        .iter()
        .map(|val| {
            val.representatives(f)
                .into_iter()
                .map(|(c, u, x)| format!("[{}, {}, {}]", i.source.object_name(c), val.weights.carriers[c][u], f.carriers[c][x]))
                .collect()
        })
        .collect();
    Ok((SetFunctor { base: i.target.clone(), carriers, action }, values))
}

/// The unit `F c → (Lan_i F)(ic)`, `x ↦ [c, 1_{ic}, x]`.
pub fn lan_unit(f: &SetFunctor, i: &FinFunctor, value_at_ic: &LanValue, c: ObjId) -> Vec<usize> {
    let d = &*i.target;
    let id = d.identity(i.objects[c]);
    let u = d.hom(i.objects[c], i.objects[c]).iter().position(|&w| w == id).expect("identity in hom");
    (0..f.size(c)).map(|x| value_at_ic.class_of(f, c, u, x)).collect()
}

/// Whether every unit component is a bijection.
pub fn unit_is_iso(f: &SetFunctor, i: &FinFunctor) -> Result<bool, KanError> {
    for c in 0..i.source.num_objects() {
        let value = pointwise_lan(f, i, i.objects[c])?;
        let unit = lan_unit(f, i, &value, c);
        let mut seen = vec![false; value.size()];
        for &y in &unit {
            if seen[y] {
                return Ok(false);
            }
            seen[y] = true;
        }
        if seen.iter().any(|&s| !s) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::examples::*;
    use crate::cat::{colimit_set_functor, enumerate_functors, enumerate_set_functors, FinCategory};

    fn arc(c: FinCategory) -> Arc<FinCategory> {
        Arc::new(c)
    }

    #[test]
    fn along_identity_is_identity() {
        let c = arc(arrow_category());
        let i = FinFunctor::identity(c.clone());
        for f in enumerate_set_functors(&c, 2) {
            let (lan, _) = lan_functor(&f, &i).unwrap();
            for o in 0..c.num_objects() {
                assert_eq!(lan.size(o), f.size(o));
            }
            assert!(lan.check_functoriality().is_empty());
            assert!(unit_is_iso(&f, &i).unwrap());
        }
    }

    #[test]
    fn empty_comma_gives_empty_set() {
        let (c, d) = (arc(discrete(1)), arc(discrete(2)));
        let i = enumerate_functors(&c, &d).into_iter().find(|i| i.objects == vec![0]).unwrap();
        let f = SetFunctor::constant(c, 2);
        assert_eq!(pointwise_lan(&f, &i, 1).unwrap().size(), 0);
        assert_eq!(pointwise_lan(&f, &i, 0).unwrap().size(), 2);
        assert_eq!(pointwise_lan(&f, &i, 2).unwrap_err(), KanError::UnknownObject(2));
    }

    #[test]
    fn along_terminal_functor_is_the_colimit() {
        let one = arc(terminal());
        for c in [arrow_category(), linear_order(3), discrete(2)] {
            let c = arc(c);
            let i = enumerate_functors(&c, &one).pop().unwrap();
            for f in enumerate_set_functors(&c, 2) {
                assert_eq!(pointwise_lan(&f, &i, 0).unwrap().size(), colimit_set_functor(&f).size());
            }
        }
    }

    #[test]
    fn fully_faithful_units_are_isos() {
        let (c, d) = (arc(linear_order(2)), arc(linear_order(3)));
        for i in enumerate_functors(&c, &d) {
            if !i.is_fully_faithful() {
                continue;
            }
            for f in enumerate_set_functors(&c, 2) {
                assert!(unit_is_iso(&f, &i).unwrap());
                let (lan, _) = lan_functor(&f, &i).unwrap();
                assert!(lan.check_functoriality().is_empty());
            }
        }
    }
}
