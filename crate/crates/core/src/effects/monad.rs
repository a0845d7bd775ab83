use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use thiserror::Error;

use crate::cat::{ArrowData, FinCategory};

/// Bounds for the elements a finite monad acts on.
pub trait Elem: Clone + Eq + Hash + Ord + Debug {}
impl<T: Clone + Eq + Hash + Ord + Debug> Elem for T {}

/// A monad on finite sets, given by its action on element types.
pub trait FinMonad {
    type T<A: Elem>: Elem;

    fn name(&self) -> String;
    /// Every element of `T A`, or `None` if there are more than `cap`.
    fn elements<A: Elem>(&self, a: &[A], cap: usize) -> Option<Vec<Self::T<A>>>;
    fn unit<A: Elem>(&self, a: A) -> Self::T<A>;
    fn fmap<A: Elem, B: Elem>(&self, t: &Self::T<A>, f: &dyn Fn(&A) -> B) -> Self::T<B>;
    fn mu<A: Elem>(&self, tt: Self::T<Self::T<A>>) -> Self::T<A>;
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{law} fails at {element}")]
pub struct MonadLawViolation {
    pub law: &'static str,
    pub element: String,
}

/// Both unit laws on `T a` and associativity on `T T T a`; the latter is
/// skipped (and reported as `false`) when `T T T a` exceeds `cap`. Returns
/// whether associativity was checked.
pub fn check_monad_laws<M: FinMonad, A: Elem>(m: &M, a: &[A], cap: usize) -> Result<bool, MonadLawViolation> {
    let ta = m.elements(a, cap).ok_or(MonadLawViolation { law: "enumeration", element: "T a over cap".into() })?;
    for t in &ta {
        if &m.mu(m.unit(t.clone())) != t {
            return Err(MonadLawViolation { law: "μ∘ηT = id", element: format!("{t:?}") });
        }
        if &m.mu(m.fmap(t, &|x: &A| m.unit(x.clone()))) != t {
            return Err(MonadLawViolation { law: "μ∘Tη = id", element: format!("{t:?}") });
        }
    }
    let Some(tta) = m.elements(&ta, cap) else { return Ok(false) };
    let Some(ttta) = m.elements(&tta, cap) else { return Ok(false) };
    for t in ttta {
        let left = m.mu(m.mu(t.clone()));
        let right = m.mu(m.fmap(&t, &|x: &M::T<M::T<A>>| m.mu(x.clone())));
        if left != right {
            return Err(MonadLawViolation { law: "μ∘μT = μ∘Tμ", element: format!("{t:?}") });
        }
    }
    Ok(true)
}

/// A Kleisli arrow `[m] → T [n]`: the image of each element.
pub type KleisliArrow<M> = Vec<<M as FinMonad>::T<usize>>;

/// `f` then `g`: `μ ∘ T g ∘ f`.
pub fn kleisli_compose<M: FinMonad>(m: &M, f: &KleisliArrow<M>, g: &KleisliArrow<M>) -> KleisliArrow<M> {
    f.iter().map(|t| m.mu(m.fmap(t, &|&j: &usize| g[j].clone()))).collect()
}

pub fn kleisli_identity<M: FinMonad>(m: &M, n: usize) -> KleisliArrow<M> {
    (0..n).map(|i| m.unit(i)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThetaError {
    #[error("hom([{m}], [{n}]) has more than {cap} arrows")]
    Overflow { m: usize, n: usize, cap: usize },
}

/// Every function `[m] → T [n]`.
pub fn kleisli_hom<M: FinMonad>(m: &M, dom: usize, cod: usize, cap: usize) -> Result<Vec<KleisliArrow<M>>, ThetaError> {
    let overflow = ThetaError::Overflow { m: dom, n: cod, cap };
    let tn = m.elements(&(0..cod).collect::<Vec<_>>(), cap).ok_or(overflow.clone())?;
    let total = (tn.len() as u128).checked_pow(dom as u32).filter(|&t| t <= cap as u128).ok_or(overflow)?;
    let mut out = Vec::with_capacity(total as usize);
    let mut digits = vec![0; dom];
    for _ in 0..total {
        out.push(digits.iter().map(|&d| tn[d].clone()).collect());
        for d in digits.iter_mut() {
            *d += 1;
            if *d < tn.len() {
                break;
            }
            *d = 0;
        }
    }
    Ok(out)
}

/// `Θ_T` on the sets `[0], …, [bound]` (`[n]` has `n` elements): arrows
/// `[m] → [n]` are functions `[m] → T[n]` under Kleisli composition. `cap`
/// bounds each hom-set.
pub fn theta_finitary<M: FinMonad>(m: &M, bound: usize, cap: usize) -> Result<FinCategory, ThetaError> {
    let mut maps: Vec<KleisliArrow<M>> = Vec::new();
    let mut arrows = Vec::new();
    let mut index: HashMap<(usize, usize, KleisliArrow<M>), usize> = HashMap::new();
    for dom in 0..=bound {
        for cod in 0..=bound {
            for (k, f) in kleisli_hom(m, dom, cod, cap)?.into_iter().enumerate() {
                index.insert((dom, cod, f.clone()), maps.len());
                arrows.push(ArrowData { name: format!("[{dom}]>[{cod}]#{k}"), src: dom, tgt: cod });
                maps.push(f);
            }
        }
    }
    let identities = (0..=bound).map(|n| index[&(n, n, kleisli_identity(m, n))]).collect();
    let mut by_src: Vec<Vec<usize>> = vec![Vec::new(); bound + 1];
    for (i, a) in arrows.iter().enumerate() {
        by_src[a.src].push(i);
    }
    let mut comp = HashMap::new();
    for (i, f) in maps.iter().enumerate() {
        for &j in &by_src[arrows[i].tgt] {
            let h = kleisli_compose(m, f, &maps[j]);
            comp.insert((i, j), index[&(arrows[i].src, arrows[j].tgt, h)]);
        }
    }
    let objects = (0..=bound).map(|n| format!("[{n}]")).collect();
    Ok(FinCategory::from_parts(objects, arrows, identities, comp))
}
