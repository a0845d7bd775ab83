use std::collections::BTreeSet;

use super::monad::{Elem, FinMonad};

/// A global store: `values` values at each of `locations` locations. A state
/// is a map locations → values, numbered in base `values` with location 0
/// as the least significant digit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Store {
    pub locations: usize,
    pub values: usize,
}

impl Store {
    pub fn new(locations: usize, values: usize) -> Self {
        Store { locations, values }
    }

    pub fn num_states(&self) -> usize {
        self.values.pow(self.locations as u32)
    }

    pub fn read(&self, s: usize, loc: usize) -> usize {
        s / self.values.pow(loc as u32) % self.values
    }

    pub fn write(&self, s: usize, loc: usize, val: usize) -> usize {
        let w = self.values.pow(loc as u32);
        s - self.read(s, loc) * w + val * w
    }

    pub fn state_of(&self, vals: &[usize]) -> usize {
        vals.iter().rev().fold(0, |acc, &v| acc * self.values + v)
    }
}

/// `T A = (S × A)^S` for a state set with `states` elements; an element is
/// the table `s ↦ (s', a)`.
#[derive(Debug, Clone, Copy)]
pub struct StateMonad {
    pub states: usize,
}

impl StateMonad {
    pub fn for_store(store: Store) -> Self {
        StateMonad { states: store.num_states() }
    }
}

impl FinMonad for StateMonad {
    type T<A: Elem> = Vec<(usize, A)>;

    fn name(&self) -> String {
        format!("state(|S|={})", self.states)
    }

    fn elements<A: Elem>(&self, a: &[A], cap: usize) -> Option<Vec<Vec<(usize, A)>>> {
        let per = self.states * a.len();
        let total = (per as u128).checked_pow(self.states as u32).filter(|&t| t <= cap as u128)?;
        let mut out = Vec::with_capacity(total as usize);
        let mut digits = vec![0; self.states];
        for _ in 0..total {
            out.push(digits.iter().map(|&d| (d / a.len(), a[d % a.len()].clone())).collect());
            for d in digits.iter_mut() {
                *d += 1;
                if *d < per {
                    break;
                }
                *d = 0;
            }
        }
        Some(out)
    }

    fn unit<A: Elem>(&self, a: A) -> Vec<(usize, A)> {
        (0..self.states).map(|s| (s, a.clone())).collect()
    }

    fn fmap<A: Elem, B: Elem>(&self, t: &Vec<(usize, A)>, f: &dyn Fn(&A) -> B) -> Vec<(usize, B)> {
        t.iter().map(|(s, a)| (*s, f(a))).collect()
    }

    /// Run the outer transformer, then the one it returned from the new state.
    fn mu<A: Elem>(&self, tt: Vec<(usize, Vec<(usize, A)>)>) -> Vec<(usize, A)> {
        tt.iter().map(|(s1, inner)| inner[*s1].clone()).collect()
    }
}

/// `h: [n] → T a` decurried: `table[s][i] = (s', x)`.
pub type Decurried = Vec<Vec<(usize, usize)>>;

/// `S × [n] → S × [p] → S × a` with `f` an increasing enumeration of the
/// `a`-image of `h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateFactorization {
    pub p: usize,
    pub e: Decurried,
    pub f: Vec<usize>,
}

impl StateFactorization {
    pub fn recompose(&self) -> Decurried {
        self.e.iter().map(|row| row.iter().map(|&(s, j)| (s, self.f[j])).collect()).collect()
    }
}

pub fn decurry(h: &[Vec<(usize, usize)>], states: usize) -> Decurried {
    (0..states).map(|s| h.iter().map(|t| t[s]).collect()).collect()
}

pub fn state_factorize(h: &Decurried) -> StateFactorization {
    let image: BTreeSet<usize> = h.iter().flatten().map(|&(_, x)| x).collect();
    let f: Vec<usize> = image.into_iter().collect();
    let e = h.iter().map(|row| row.iter().map(|&(s, x)| (s, f.binary_search(&x).expect("in image"))).collect()).collect();
    StateFactorization { p: f.len(), e, f }
}

/// Whether some `f': [q] → a` admits an `e'` with `(S × f') ∘ e' = h`:
/// exactly when the image of `f'` covers the `a`-image of `h`.
pub fn factors_through(h: &Decurried, q: usize, a: usize) -> bool {
    let needed: BTreeSet<usize> = h.iter().flatten().map(|&(_, x)| x).collect();
    if q == 0 {
        return needed.is_empty();
    }
    let total = (a as u128).checked_pow(q as u32).unwrap_or(u128::MAX);
    let mut digits = vec![0; q];
    for _ in 0..total {
        if needed.iter().all(|x| digits.contains(x)) {
            return true;
        }
        for d in digits.iter_mut() {
            *d += 1;
            if *d < a {
                break;
            }
            *d = 0;
        }
    }
    false
}

/// Every factorization `(S × f') ∘ e' = h` through `[q]`, `q ≤ max_p`.
pub fn all_factorizations(h: &Decurried, a: usize, max_p: usize) -> Vec<StateFactorization> {
    let states = h.len();
    let n = h.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for p in 0..=max_p {
        let total_f = (a as u128).checked_pow(p as u32).expect("too many maps");
        for mut code in 0..total_f {
            let f: Vec<usize> = (0..p)
                .map(|_| {
                    let d = (code % a as u128) as usize;
                    code /= a as u128;
                    d
                })
                .collect();
            // e' is determined pointwise up to the fibres of f
            let choices: Vec<Vec<(usize, usize)>> =
                h.iter().flatten().map(|&(s, x)| (0..p).filter(|&j| f[j] == x).map(|j| (s, j)).collect()).collect();
            let total_e: u128 = choices.iter().map(|c| c.len() as u128).product();
            for mut code in 0..total_e {
                let cells: Vec<(usize, usize)> = choices
                    .iter()
                    .map(|c| {
                        let d = (code % c.len() as u128) as usize;
                        code /= c.len() as u128;
                        c[d]
                    })
                    .collect();
                let e = (0..states).map(|s| cells[s * n..(s + 1) * n].to_vec()).collect();
                out.push(StateFactorization { p, e, f: f.clone() });
            }
        }
    }
    out
}

/// Connected components of the factorizations of `h` through `[q]`,
/// `q ≤ max_p`, where `u: [p] → [q]` links `(e, f)` to `(e', f')` when
/// `(S × u) ∘ e = e'` and `f' ∘ u = f`.
pub fn zigzag_components(h: &Decurried, a: usize, max_p: usize) -> usize {
    let facs = all_factorizations(h, a, max_p);
    let mut graph = petgraph::unionfind::UnionFind::<usize>::new(facs.len());
    for (i, x) in facs.iter().enumerate() {
        for (j, y) in facs.iter().enumerate() {
            let total = (y.p as u128).checked_pow(x.p as u32).expect("too many maps");
            for mut code in 0..total {
                let u: Vec<usize> = (0..x.p)
                    .map(|_| {
                        let d = (code % y.p as u128) as usize;
                        code /= y.p as u128;
                        d
                    })
                    .collect();
                let f_ok = (0..x.p).all(|k| y.f[u[k]] == x.f[k]);
                let e_ok = x.e.iter().zip(&y.e).all(|(r, r2)| r.iter().zip(r2).all(|(&(s, j), &(s2, j2))| s == s2 && u[j] == j2));
                if f_ok && e_ok {
                    graph.union(i, j);
                    break;
                }
            }
        }
    }
    let mut roots: Vec<usize> = (0..facs.len()).map(|i| graph.find(i)).collect();
    roots.sort_unstable();
    roots.dedup();
    roots.len()
}

/// Every `h: S × [n] → S × a`, as decurried tables, in a fixed order.
pub fn all_decurried(states: usize, n: usize, a: usize) -> impl Iterator<Item = Decurried> {
    let cells = states * n;
    let per = states * a;
    let total = if cells == 0 { 1 } else { (per as u128).checked_pow(cells as u32).unwrap_or(u128::MAX) };
    (0..total).map(move |mut code| {
        (0..states)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        let d = (code % per as u128) as usize;
                        code /= per as u128;
                        (d / a, d % a)
                    })
                    .collect()
            })
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::effects::monad::{check_monad_laws, theta_finitary};

    #[test]
    fn carrier_and_unit() {
        let t = StateMonad::for_store(Store::new(1, 2));
        assert_eq!(t.elements(&[0], 100).unwrap().len(), 4);
        assert_eq!(t.unit(7), vec![(0, 7), (1, 7)]);
    }

    #[test]
    fn mu_is_sequencing() {
        let t = StateMonad { states: 2 };
        let ta = t.elements(&[0usize], 100).unwrap();
        for outer in t.elements(&ta, 1000).unwrap() {
            let direct: Vec<(usize, usize)> = (0..2)
                .map(|s| {
                    let (s1, inner) = &outer[s];
                    inner[*s1]
                })
                .collect();
            assert_eq!(t.mu(outer), direct);
        }
        assert!(check_monad_laws(&t, &[0usize], 1 << 16).unwrap());
    }

    #[test]
    fn theta_hom_count() {
        let c = theta_finitary(&StateMonad { states: 2 }, 2, 10_000).unwrap();
        let one = c.object_id("[1]").unwrap();
        assert_eq!(c.hom(one, one).len(), 4);
        assert!(c.is_valid());
    }

    #[test]
    fn store_digits() {
        let s = Store::new(2, 3);
        assert_eq!(s.num_states(), 9);
        let st = s.state_of(&[2, 1]);
        assert_eq!((s.read(st, 0), s.read(st, 1)), (2, 1));
        assert_eq!(s.write(st, 1, 0), s.state_of(&[2, 0]));
    }

    #[test]
    fn factorization_examples() {
        // constant in a
        let h = vec![vec![(1, 2), (0, 2)], vec![(1, 2), (1, 2)]];
        let fac = state_factorize(&h);
        assert_eq!((fac.p, fac.recompose()), (1, h));
        // image {0, 2} of a = {0, 1, 2}
        let h = vec![vec![(0, 2), (1, 0)], vec![(1, 0), (0, 0)]];
        let fac = state_factorize(&h);
        assert_eq!((fac.p, fac.f.clone()), (2, vec![0, 2]));
        assert_eq!(fac.recompose(), h);
        assert!(!factors_through(&h, 1, 3));
        // surjective
        let h = vec![vec![(0, 1), (0, 0)]];
        assert_eq!(state_factorize(&h).f, vec![0, 1]);
    }

    #[test]
    fn exhaustive_small() {
        for states in 1..=2 {
            for n in 0..=2 {
                for a in 1..=2 {
                    for h in all_decurried(states, n, a) {
                        let fac = state_factorize(&h);
                        assert_eq!(fac.recompose(), h);
                        assert!(fac.p == 0 || !factors_through(&h, fac.p - 1, a));
                        if states * n <= 2 {
                            assert_eq!(zigzag_components(&h, a, fac.p + 1), 1, "{h:?}");
                        }
                    }
                }
            }
        }
    }
}
