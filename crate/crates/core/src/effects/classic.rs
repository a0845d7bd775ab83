use std::collections::BTreeSet;

use thiserror::Error;

use super::monad::{Elem, FinMonad};

/// `T A = A ⊔ {⊥}`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Partiality;

impl FinMonad for Partiality {
    type T<A: Elem> = Option<A>;

    fn name(&self) -> String {
        "partiality".into()
    }

    fn elements<A: Elem>(&self, a: &[A], cap: usize) -> Option<Vec<Option<A>>> {
        (a.len() < cap).then(|| std::iter::once(None).chain(a.iter().cloned().map(Some)).collect())
    }

    fn unit<A: Elem>(&self, a: A) -> Option<A> {
        Some(a)
    }

    fn fmap<A: Elem, B: Elem>(&self, t: &Option<A>, f: &dyn Fn(&A) -> B) -> Option<B> {
        t.as_ref().map(f)
    }

    fn mu<A: Elem>(&self, tt: Option<Option<A>>) -> Option<A> {
        tt.flatten()
    }
}

/// Finite nondeterminism, `T A = P_fin(A)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Nondeterminism;

impl FinMonad for Nondeterminism {
    type T<A: Elem> = BTreeSet<A>;

    fn name(&self) -> String {
        "nondeterminism".into()
    }

    fn elements<A: Elem>(&self, a: &[A], cap: usize) -> Option<Vec<BTreeSet<A>>> {
        if a.len() >= usize::BITS as usize - 1 || (1usize << a.len()) > cap {
            return None;
        }
        Some(
            (0..1usize << a.len())
                .map(|bits| a.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, x)| x.clone()).collect())
                .collect(),
        )
    }

    fn unit<A: Elem>(&self, a: A) -> BTreeSet<A> {
        BTreeSet::from([a])
    }

    fn fmap<A: Elem, B: Elem>(&self, t: &BTreeSet<A>, f: &dyn Fn(&A) -> B) -> BTreeSet<B> {
        t.iter().map(f).collect()
    }

    fn mu<A: Elem>(&self, tt: BTreeSet<BTreeSet<A>>) -> BTreeSet<A> {
        tt.into_iter().flatten().collect()
    }
}

/// `T A = A + E` with `E = {0, …, errors-1}`.
#[derive(Debug, Clone, Copy)]
pub struct Exceptions {
    pub errors: usize,
}

impl FinMonad for Exceptions {
    type T<A: Elem> = Result<A, usize>;

    fn name(&self) -> String {
        format!("exceptions(|E|={})", self.errors)
    }

    fn elements<A: Elem>(&self, a: &[A], cap: usize) -> Option<Vec<Result<A, usize>>> {
        (a.len() + self.errors <= cap).then(|| a.iter().cloned().map(Ok).chain((0..self.errors).map(Err)).collect())
    }

    fn unit<A: Elem>(&self, a: A) -> Result<A, usize> {
        Ok(a)
    }

    fn fmap<A: Elem, B: Elem>(&self, t: &Result<A, usize>, f: &dyn Fn(&A) -> B) -> Result<B, usize> {
        t.as_ref().map(f).map_err(|&e| e)
    }

    fn mu<A: Elem>(&self, tt: Result<Result<A, usize>, usize>) -> Result<A, usize> {
        tt.and_then(|t| t)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassicError {
    #[error("unknown monad {0:?}; expected partiality, nondeterminism or exceptions")]
    UnknownMonad(String),
    #[error("T a has more than {0} elements")]
    TooLarge(usize),
}

/// A classic monad at one finite set, printed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonadInstance {
    pub name: String,
    pub carrier: Vec<String>,
    /// `η` as positions in `carrier`.
    pub unit: Vec<usize>,
    /// Operations of the corresponding theory, with their arities.
    pub generators: Vec<(String, usize)>,
}

fn instance<M: FinMonad>(m: &M, a: usize, cap: usize, generators: Vec<(String, usize)>) -> Result<MonadInstance, ClassicError> {
    let elems: Vec<usize> = (0..a).collect();
    let ta = m.elements(&elems, cap).ok_or(ClassicError::TooLarge(cap))?;
    let unit = elems.iter().map(|&x| ta.iter().position(|t| *t == m.unit(x)).expect("unit in carrier")).collect();
    Ok(MonadInstance { name: m.name(), carrier: ta.iter().map(|t| format!("{t:?}")).collect(), unit, generators })
}

/// `partiality`, `nondeterminism` or `exceptions` (with `errors` exception
/// names) on the set `{0, …, a-1}`.
pub fn classic_monads(name: &str, a: usize, errors: usize, cap: usize) -> Result<MonadInstance, ClassicError> {
    match name {
        "partiality" => instance(&Partiality, a, cap, vec![("⊥".into(), 0)]),
        "nondeterminism" => instance(&Nondeterminism, a, cap, vec![("∨".into(), 2), ("∅".into(), 0)]),
        "exceptions" => {
            let raise = (0..errors).map(|e| (format!("raise_{e}"), 0)).collect();
            instance(&Exceptions { errors }, a, cap, raise)
        }
        other => Err(ClassicError::UnknownMonad(other.into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::effects::monad::{check_monad_laws, theta_finitary};

    #[test]
    fn carrier_sizes() {
        assert_eq!(classic_monads("partiality", 3, 0, 100).unwrap().carrier.len(), 4);
        assert_eq!(classic_monads("nondeterminism", 2, 0, 100).unwrap().carrier.len(), 4);
        let exc = classic_monads("exceptions", 1, 2, 100).unwrap();
        assert_eq!(exc.carrier.len(), 3);
        assert_eq!(exc.generators, vec![("raise_0".into(), 0), ("raise_1".into(), 0)]);
        assert_eq!(classic_monads("state", 1, 0, 100).unwrap_err(), ClassicError::UnknownMonad("state".into()));
    }

    #[test]
    fn laws() {
        for n in 0..=3 {
            let a: Vec<usize> = (0..n).collect();
            assert!(check_monad_laws(&Partiality, &a, 1 << 20).unwrap());
            assert!(check_monad_laws(&Exceptions { errors: 2 }, &a, 1 << 20).unwrap());
        }
        assert!(check_monad_laws(&Nondeterminism, &[0, 1], 1 << 20).unwrap());
    }

    #[test]
    fn theta_homs() {
        let p = theta_finitary(&Partiality, 2, 1000).unwrap();
        assert!(p.is_valid());
        let one = p.object_id("[1]").unwrap();
        assert_eq!(p.hom(one, one).len(), 2);
        let e = theta_finitary(&Exceptions { errors: 1 }, 2, 1000).unwrap();
        assert_eq!(e.hom(e.object_id("[0]").unwrap(), e.object_id("[1]").unwrap()).len(), 1);
        assert!(e.is_valid());
    }
}
