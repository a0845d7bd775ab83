use std::collections::HashMap;

use super::table::{reverse_operad, Op, Operad};

/// An element `(θ, x₁, …, xₙ)` of `T_C X = ∐ₙ C(n) × Xⁿ`.
pub type OpTuple<A> = (Op, Vec<A>);

/// `⊔_{n ≤ bound} C(n) × [x]ⁿ`, arity by arity.
pub fn induced_monad_apply(c: &Operad, x: usize, bound: usize) -> Vec<OpTuple<usize>> {
    let mut out = Vec::new();
    for n in 0..=bound.min(c.max_arity) {
        let words = words(x, n);
        for theta in c.ops(n) {
            out.extend(words.iter().map(|w| (theta, w.clone())));
        }
    }
    out
}

fn words(x: usize, n: usize) -> Vec<Vec<usize>> {
    (0..n).fold(vec![Vec::new()], |acc, _| acc.iter().flat_map(|w| (0..x).map(move |a| [w.as_slice(), &[a]].concat())).collect())
}

pub fn induced_unit<A>(c: &Operad, a: A) -> OpTuple<A> {
    (c.id(), vec![a])
}

/// `(θ, (θ₁, x⃗₁), …) ↦ (γ(θ; θ₁, …), x⃗₁ ⋯ x⃗ₙ)`; `None` beyond the truncation.
pub fn induced_mu<A: Clone>(c: &Operad, tt: &OpTuple<OpTuple<A>>) -> Option<OpTuple<A>> {
    let (theta, inner) = tt;
    let args: Vec<Op> = inner.iter().map(|(t, _)| *t).collect();
    let op = c.compose(*theta, &args)?;
    Some((op, inner.iter().flat_map(|(_, xs)| xs.iter().cloned()).collect()))
}

pub fn induced_fmap<A, B>(t: &OpTuple<A>, f: impl Fn(&A) -> B) -> OpTuple<B> {
    (t.0, t.1.iter().map(f).collect())
}

/// Every `(θ, [t₁, …, tₙ])` with `tᵢ` drawn from `pool`, `θ` of arity
/// `≤ bound` and total inner arity `≤ bound`.
fn layer<A: Clone>(c: &Operad, pool: &[OpTuple<A>], bound: usize) -> Vec<OpTuple<OpTuple<A>>> {
    let mut out = Vec::new();
    for n in 0..=bound.min(c.max_arity) {
        for args in c.arg_lists(n, bound) {
            let mut picks: Vec<Vec<OpTuple<A>>> = vec![Vec::new()];
            for a in &args {
                let choices: Vec<&OpTuple<A>> = pool.iter().filter(|t| t.0 == *a).collect();
                picks =
                    picks.iter().flat_map(|p| choices.iter().map(move |t| [p.as_slice(), &[(*t).clone()]].concat())).collect();
            }
            for theta in c.ops(n) {
                out.extend(picks.iter().map(|p| (theta, p.clone())));
            }
        }
    }
    out
}

/// Both monad diagrams of `T_C` on `[x]`, over elements whose every
/// multiplication stays within `bound`. Returns the number of instances.
pub fn check_induced_monad(c: &Operad, x: usize, bound: usize) -> Result<usize, String> {
    let single = induced_monad_apply(c, x, bound);
    let mut checked = 0;
    for t in &single {
        checked += 1;
        if induced_mu(c, &induced_unit(c, t.clone())).as_ref() != Some(t) {
            return Err(format!("μ∘ηT fails at {t:?}"));
        }
        if induced_mu(c, &induced_fmap(t, |&a| induced_unit(c, a))).as_ref() != Some(t) {
            return Err(format!("μ∘Tη fails at {t:?}"));
        }
    }
    // (θ; θᵢ) in range, then (φⱼ) under the composite, then the leaves
    for (theta, args) in c.instances() {
        let total: usize = args.iter().map(|a| a.arity).sum();
        if theta.arity > bound || total > bound {
            continue;
        }
        for phis in c.arg_lists(total, bound) {
            let leaves: usize = phis.iter().map(|p| p.arity).sum();
            for xs in words(x, leaves) {
                let mut at = 0;
                let ts: Vec<OpTuple<usize>> = phis
                    .iter()
                    .map(|p| {
                        let t = (*p, xs[at..at + p.arity].to_vec());
                        at += p.arity;
                        t
                    })
                    .collect();
                let mut at = 0;
                let middle: Vec<OpTuple<OpTuple<usize>>> = args
                    .iter()
                    .map(|a| {
                        let t = (*a, ts[at..at + a.arity].to_vec());
                        at += a.arity;
                        t
                    })
                    .collect();
                let ttt = (theta, middle);
                checked += 1;
                let left = induced_mu(c, &induced_mu(c, &ttt).expect("in range")).expect("in range");
                let right = induced_mu(c, &induced_fmap(&ttt, |t| induced_mu(c, t).expect("in range"))).expect("in range");
                if left != right {
                    return Err(format!("μ∘μT ≠ μ∘Tμ at {ttt:?}"));
                }
            }
        }
    }
    Ok(checked)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoReport {
    pub holds: bool,
    pub checked: usize,
    pub failure: Option<String>,
}

/// Whether reversing tuples, `(θ, x₁, …, xₙ) ↦ (θ, xₙ, …, x₁)`, is a monad
/// isomorphism `T_C ≅ T_{C^rev}` on the sets of the given sizes: naturality
/// along every map between them, and compatibility with units and
/// multiplications within `bound`.
pub fn monad_iso_check(c: &Operad, sizes: &[usize], bound: usize) -> IsoReport {
    let rev = reverse_operad(c);
    let rho = |t: &OpTuple<usize>| -> OpTuple<usize> { (t.0, t.1.iter().rev().copied().collect()) };
    let mut checked = 0;
    let fail = |checked, msg: String| IsoReport { holds: false, checked, failure: Some(msg) };
    for &x in sizes {
        for a in 0..x {
            checked += 1;
            if rho(&induced_unit(c, a)) != induced_unit(&rev, a) {
                return fail(checked, format!("unit at {a}"));
            }
        }
        let single = induced_monad_apply(c, x, bound);
        for tt in layer(c, &single, bound) {
            let Some(flat) = induced_mu(c, &tt) else { continue };
            checked += 1;
            let inner_reversed = induced_fmap(&tt, rho);
            let both = (inner_reversed.0, inner_reversed.1.into_iter().rev().collect());
            if induced_mu(&rev, &both) != Some(rho(&flat)) {
                return fail(checked, format!("multiplication at {tt:?}"));
            }
        }
        for &y in sizes {
            for f in words(y, x) {
                for t in &single {
                    checked += 1;
                    if rho(&induced_fmap(t, |&a| f[a])) != induced_fmap(&rho(t), |&a| f[a]) {
                        return fail(checked, format!("naturality along {f:?} at {t:?}"));
                    }
                }
            }
        }
    }
    IsoReport { holds: true, checked, failure: None }
}

/// A `C`-algebra on `[carrier]`: for each operation a table over `Xⁿ`,
/// indexed with the first argument most significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperadAlgebra {
    pub carrier: usize,
    pub actions: HashMap<Op, Vec<usize>>,
}

impl OperadAlgebra {
    pub fn act(&self, theta: Op, xs: &[usize]) -> usize {
        let code = xs.iter().fold(0, |acc, &x| acc * self.carrier + x);
        self.actions[&theta][code]
    }
}

/// `θ̂ₙ(x₁, …, xₙ) = x₁ · … · xₙ` for every operation of every arity.
pub fn monoid_algebra(c: &Operad, carrier: usize, mul: &[usize], unit: usize) -> OperadAlgebra {
    let mut actions = HashMap::new();
    for n in 0..=c.max_arity {
        let table: Vec<usize> = words(carrier, n).iter().map(|w| w.iter().fold(unit, |acc, &x| mul[acc * carrier + x])).collect();
        for theta in c.ops(n) {
            actions.insert(theta, table.clone());
        }
    }
    OperadAlgebra { carrier, actions }
}

/// Identity and associativity of the action, over in-range instances.
pub fn check_operad_algebra(c: &Operad, alg: &OperadAlgebra) -> Result<usize, String> {
    let mut checked = 0;
    for x in 0..alg.carrier {
        checked += 1;
        if alg.act(c.id(), &[x]) != x {
            return Err(format!("identity acts nontrivially on {x}"));
        }
    }
    for (theta, args) in c.instances() {
        let composite = c.compose(theta, &args).expect("in range");
        for xs in words(alg.carrier, composite.arity) {
            checked += 1;
            let mut at = 0;
            let inner: Vec<usize> = args
                .iter()
                .map(|a| {
                    let v = alg.act(*a, &xs[at..at + a.arity]);
                    at += a.arity;
                    v
                })
                .collect();
            if alg.act(composite, &xs) != alg.act(theta, &inner) {
                return Err(format!("{} at {xs:?}", c.show(theta, &args)));
            }
        }
    }
    Ok(checked)
}

/// The same algebra read as `a: T_C X → X`, checked against `a∘η = id` and
/// `a∘μ = a∘T a` within `bound`.
pub fn check_monad_algebra(c: &Operad, alg: &OperadAlgebra, bound: usize) -> Result<usize, String> {
    let a = |t: &OpTuple<usize>| alg.act(t.0, &t.1);
    let mut checked = 0;
    for x in 0..alg.carrier {
        checked += 1;
        if a(&induced_unit(c, x)) != x {
            return Err(format!("a∘η fails at {x}"));
        }
    }
    let single = induced_monad_apply(c, alg.carrier, bound);
    for tt in layer(c, &single, bound) {
        let Some(flat) = induced_mu(c, &tt) else { continue };
        checked += 1;
        if a(&flat) != a(&induced_fmap(&tt, a)) {
            return Err(format!("a∘μ ≠ a∘Ta at {tt:?}"));
        }
    }
    Ok(checked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operad::table::{first_marker_operad, projection_operad, semigroup_operad, sets_operad, terminal_operad};

    #[test]
    fn carriers() {
        assert_eq!(induced_monad_apply(&terminal_operad(3).unwrap(), 2, 2).len(), 7);
        let sets = induced_monad_apply(&sets_operad(3).unwrap(), 3, 3);
        assert_eq!(sets.len(), 3);
        assert!(sets.iter().all(|(op, xs)| op.arity == 1 && xs.len() == 1));
        let semi = induced_monad_apply(&semigroup_operad(3).unwrap(), 2, 3);
        assert_eq!(semi.len(), 2 + 4 + 8);
        assert!(semi.iter().all(|(_, xs)| !xs.is_empty()));
    }

    #[test]
    fn monad_laws() {
        for c in [terminal_operad(3), sets_operad(3), semigroup_operad(3), projection_operad(3), first_marker_operad(3)] {
            let c = c.unwrap();
            for x in 0..=2 {
                let checked = check_induced_monad(&c, x, 3).unwrap();
                assert!(x == 0 || checked > 0);
            }
        }
    }

    #[test]
    fn reversal_is_a_monad_isomorphism() {
        for c in [terminal_operad(3), projection_operad(3), first_marker_operad(3), first_marker_operad(2)] {
            let r = monad_iso_check(&c.unwrap(), &[0, 1, 2, 3], 3);
            assert!(r.holds, "{r:?}");
        }
        let empty = monad_iso_check(&first_marker_operad(2).unwrap(), &[0], 2);
        assert!(empty.holds);
    }

    fn monoid(mul: &[usize], unit: usize, x: usize) -> bool {
        let m = |a: usize, b: usize| mul[a * x + b];
        (0..x).all(|a| m(unit, a) == a && m(a, unit) == a)
            && (0..x).all(|a| (0..x).all(|b| (0..x).all(|c| m(m(a, b), c) == m(a, m(b, c)))))
    }

    #[test]
    fn terminal_algebras_are_monoids() {
        let t = terminal_operad(3).unwrap();
        for x in 1..=3usize {
            let tables = x.pow((x * x) as u32);
            for code in 0..tables {
                let mul: Vec<usize> = (0..x * x).map(|i| code / x.pow(i as u32) % x).collect();
                for unit in 0..x {
                    let alg = monoid_algebra(&t, x, &mul, unit);
                    let operadic = check_operad_algebra(&t, &alg).is_ok();
                    assert_eq!(operadic, monoid(&mul, unit, x), "{mul:?} {unit}");
                    if x <= 2 {
                        assert_eq!(check_monad_algebra(&t, &alg, 3).is_ok(), operadic);
                    }
                }
            }
        }
    }
}
