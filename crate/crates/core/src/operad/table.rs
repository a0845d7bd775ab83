use std::collections::{HashMap, HashSet};

use thiserror::Error;

/// An element of `C(arity)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Op {
    pub arity: usize,
    pub index: usize,
}

impl Op {
    pub fn new(arity: usize, index: usize) -> Self {
        Op { arity, index }
    }
}

/// A plain operad truncated at `max_arity`: `γ(θ; θ₁, …, θₙ)` is stored for
/// every instance whose total arity is at most `max_arity`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Operad {
    pub max_arity: usize,
    /// `names[n]` lists `C(n)`.
    pub names: Vec<Vec<String>>,
    /// Index of the identity in `C(1)`.
    pub identity: usize,
    table: HashMap<(Op, Vec<Op>), usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OperadError {
    #[error("max arity must be at least 1")]
    NoUnary,
    #[error("expected {expected} arity levels, got {got}")]
    Levels { expected: usize, got: usize },
    #[error("identity {0} is not in C(1)")]
    Identity(usize),
    #[error("duplicate operation name {0:?}")]
    DuplicateName(String),
    #[error("unknown operation {0:?}")]
    UnknownName(String),
    #[error("composition {0} lands in arity {1}, expected {2}")]
    WrongArity(String, usize, usize),
    #[error("composition {0} has no result in C(n)")]
    BadResult(String),
    #[error("composition {0} is given twice")]
    Duplicate(String),
    #[error("composition {0} is missing")]
    Missing(String),
    #[error("composition {0} exceeds the truncation")]
    OutOfRange(String),
}

impl Operad {
    fn check_shape(max_arity: usize, names: &[Vec<String>], identity: usize) -> Result<(), OperadError> {
        if max_arity == 0 {
            return Err(OperadError::NoUnary);
        }
        if names.len() != max_arity + 1 {
            return Err(OperadError::Levels { expected: max_arity + 1, got: names.len() });
        }
        if identity >= names[1].len() {
            return Err(OperadError::Identity(identity));
        }
        let mut seen = HashSet::new();
        for name in names.iter().flatten() {
            if !seen.insert(name) {
                return Err(OperadError::DuplicateName(name.clone()));
            }
        }
        Ok(())
    }

    /// Tabulate `compose` on every in-range instance.
    pub fn tabulate(
        max_arity: usize,
        names: Vec<Vec<String>>,
        identity: usize,
        compose: impl Fn(Op, &[Op]) -> usize,
    ) -> Result<Operad, OperadError> {
        Self::check_shape(max_arity, &names, identity)?;
        let mut c = Operad { max_arity, names, identity, table: HashMap::new() };
        let mut table = HashMap::new();
        for (theta, args) in c.instances() {
            let total: usize = args.iter().map(|a| a.arity).sum();
            let r = compose(theta, &args);
            if r >= c.names[total].len() {
                return Err(OperadError::BadResult(c.show(theta, &args)));
            }
            table.insert((theta, args), r);
        }
        c.table = table;
        Ok(c)
    }

    /// Build from named entries `(θ, [θ₁, …], result)`, which must cover
    /// every in-range instance exactly once.
    pub fn from_entries(
        max_arity: usize,
        names: Vec<Vec<String>>,
        identity: usize,
        entries: &[(String, Vec<String>, String)],
    ) -> Result<Operad, OperadError> {
        Self::check_shape(max_arity, &names, identity)?;
        let mut c = Operad { max_arity, names, identity, table: HashMap::new() };
        let lookup: HashMap<&str, Op> = c
            .names
            .iter()
            .enumerate()
            .flat_map(|(n, ops)| ops.iter().enumerate().map(move |(i, s)| (s.as_str(), Op::new(n, i))))
            .collect();
        let find = |s: &String| lookup.get(s.as_str()).copied().ok_or_else(|| OperadError::UnknownName(s.clone()));
        let mut table = HashMap::new();
        for (outer, inner, result) in entries {
            let theta = find(outer)?;
            let args = inner.iter().map(find).collect::<Result<Vec<_>, _>>()?;
            let r = find(result)?;
            let label = c.show(theta, &args);
            let total: usize = args.iter().map(|a| a.arity).sum();
            if args.len() != theta.arity || total > max_arity {
                return Err(OperadError::OutOfRange(label));
            }
            if r.arity != total {
                return Err(OperadError::WrongArity(label, r.arity, total));
            }
            if table.insert((theta, args), r.index).is_some() {
                return Err(OperadError::Duplicate(label));
            }
        }
        for (theta, args) in c.instances() {
            if !table.contains_key(&(theta, args.clone())) {
                return Err(OperadError::Missing(c.show(theta, &args)));
            }
        }
        c.table = table;
        Ok(c)
    }

    pub fn size(&self, n: usize) -> usize {
        self.names.get(n).map_or(0, Vec::len)
    }

    pub fn ops(&self, n: usize) -> impl Iterator<Item = Op> {
        (0..self.size(n)).map(move |i| Op::new(n, i))
    }

    pub fn id(&self) -> Op {
        Op::new(1, self.identity)
    }

    pub fn name(&self, op: Op) -> &str {
        &self.names[op.arity][op.index]
    }

    pub fn show(&self, theta: Op, args: &[Op]) -> String {
        let inner: Vec<&str> = args.iter().map(|&a| self.name(a)).collect();
        format!("γ({}; {})", self.name(theta), inner.join(", "))
    }

    /// `γ(θ; args)`, or `None` beyond the truncation.
    pub fn compose(&self, theta: Op, args: &[Op]) -> Option<Op> {
        let total = args.iter().map(|a| a.arity).sum();
        (total <= self.max_arity).then(|| Op::new(total, self.table[&(theta, args.to_vec())]))
    }

    /// Every in-range `(θ, [θ₁, …, θₙ])`.
    pub fn instances(&self) -> Vec<(Op, Vec<Op>)> {
        let mut out = Vec::new();
        for n in 0..=self.max_arity {
            for args in self.arg_lists(n, self.max_arity) {
                out.extend(self.ops(n).map(|theta| (theta, args.clone())));
            }
        }
        out
    }

    /// Lists of `n` operations with total arity `≤ budget`.
    pub fn arg_lists(&self, n: usize, budget: usize) -> Vec<Vec<Op>> {
        if n == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for k in 0..=budget {
            for first in self.ops(k) {
                for mut rest in self.arg_lists(n - 1, budget - k) {
                    rest.insert(0, first);
                    out.push(rest);
                }
            }
        }
        out
    }

    fn entries(&self) -> impl Iterator<Item = (&(Op, Vec<Op>), &usize)> {
        self.table.iter()
    }
}

/// Violations of the operad laws, quantified over instances whose every
/// composite stays within the truncation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OperadReport {
    pub identity_checked: usize,
    pub associativity_checked: usize,
    pub identity_violations: Vec<String>,
    pub associativity_violations: Vec<String>,
}

impl OperadReport {
    pub fn is_valid(&self) -> bool {
        self.identity_violations.is_empty() && self.associativity_violations.is_empty()
    }
}

pub fn validate_operad(c: &Operad) -> OperadReport {
    let mut report = OperadReport::default();
    let id = c.id();
    for n in 0..=c.max_arity {
        for theta in c.ops(n) {
            report.identity_checked += 1;
            if c.compose(theta, &vec![id; n]) != Some(theta) {
                report.identity_violations.push(format!("{} ≠ {}", c.show(theta, &vec![id; n]), c.name(theta)));
            }
            if c.compose(id, &[theta]) != Some(theta) {
                report.identity_violations.push(format!("{} ≠ {}", c.show(id, &[theta]), c.name(theta)));
            }
        }
    }
    for (theta, args) in c.instances() {
        let middle = c.compose(theta, &args).expect("in range");
        let ks: Vec<usize> = args.iter().map(|a| a.arity).collect();
        for phis in c.arg_lists(middle.arity, c.max_arity) {
            report.associativity_checked += 1;
            let left = c.compose(middle, &phis).expect("in range");
            let mut grouped = Vec::with_capacity(args.len());
            let mut at = 0;
            for (&a, &k) in args.iter().zip(&ks) {
                grouped.push(c.compose(a, &phis[at..at + k]).expect("in range"));
                at += k;
            }
            let right = c.compose(theta, &grouped).expect("in range");
            if left != right {
                let inner: Vec<&str> = phis.iter().map(|&p| c.name(p)).collect();
                report.associativity_violations.push(format!(
                    "{} then ({}): {} ≠ {}",
                    c.show(theta, &args),
                    inner.join(", "),
                    c.name(left),
                    c.name(right)
                ));
            }
        }
    }
    report
}

/// `θ ∘ʳᵉᵛ (θ₁, …, θₙ) = θ ∘ (θₙ, …, θ₁)`.
pub fn reverse_operad(c: &Operad) -> Operad {
    let mut table = HashMap::new();
    for (theta, args) in c.instances() {
        let reversed: Vec<Op> = args.iter().rev().copied().collect();
        table.insert((theta, args), c.compose(theta, &reversed).expect("in range").index);
    }
    Operad { table, ..c.clone() }
}

/// The entries `(θ, [θ₁, …], result)` by name, sorted.
pub fn operad_entries(c: &Operad) -> Vec<(String, Vec<String>, String)> {
    let mut out: Vec<(String, Vec<String>, String)> = c
        .entries()
        .map(|((theta, args), &r)| {
            let total = args.iter().map(|a| a.arity).sum();
            (
                c.name(*theta).to_string(),
                args.iter().map(|&a| c.name(a).to_string()).collect(),
                c.name(Op::new(total, r)).to_string(),
            )
        })
        .collect();
    out.sort();
    out
}

/// An isomorphism `c → d` as arity-wise permutations (`perm[n][i]` is the
/// image of the `i`-th element of `C(n)`), if one exists; brute force.
pub fn operad_isomorphism(c: &Operad, d: &Operad) -> Option<Vec<Vec<usize>>> {
    if c.max_arity != d.max_arity || (0..=c.max_arity).any(|n| c.size(n) != d.size(n)) {
        return None;
    }
    let instances = c.instances();
    let mut by_level: Vec<Vec<(Op, Vec<Op>)>> = vec![Vec::new(); c.max_arity + 1];
    for (theta, args) in instances {
        let top = args.iter().map(|a| a.arity).chain([theta.arity, args.iter().map(|a| a.arity).sum()]).max().unwrap_or(0);
        by_level[top].push((theta, args));
    }
    let mut perm: Vec<Vec<usize>> = Vec::new();
    search_iso(c, d, &by_level, &mut perm).then_some(perm)
}

fn search_iso(c: &Operad, d: &Operad, by_level: &[Vec<(Op, Vec<Op>)>], perm: &mut Vec<Vec<usize>>) -> bool {
    let level = perm.len();
    if level > c.max_arity {
        return true;
    }
    let size = c.size(level);
    let mut current: Vec<usize> = (0..size).collect();
    loop {
        perm.push(current.clone());
        let map = |op: Op, perm: &Vec<Vec<usize>>| Op::new(op.arity, perm[op.arity][op.index]);
        let consistent = (level != 1 || current[c.identity] == d.identity)
            && by_level[level].iter().all(|(theta, args)| {
                let image_args: Vec<Op> = args.iter().map(|&a| map(a, perm)).collect();
                let lhs = map(c.compose(*theta, args).expect("in range"), perm);
                d.compose(map(*theta, perm), &image_args) == Some(lhs)
            });
        if consistent && search_iso(c, d, by_level, perm) {
            return true;
        }
        perm.pop();
        if !next_permutation(&mut current) {
            return false;
        }
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else { return false };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn level_names(max_arity: usize, sizes: impl Fn(usize) -> Vec<String>) -> Vec<Vec<String>> {
    (0..=max_arity).map(sizes).collect()
}

/// One operation `mₙ` in every arity; its algebras are monoids.
pub fn terminal_operad(max_arity: usize) -> Result<Operad, OperadError> {
    Operad::tabulate(max_arity, level_names(max_arity, |n| vec![format!("m{n}")]), 0, |_, _| 0)
}

/// Only the identity; its algebras are sets.
pub fn sets_operad(max_arity: usize) -> Result<Operad, OperadError> {
    let names = level_names(max_arity, |n| if n == 1 { vec!["id".into()] } else { Vec::new() });
    Operad::tabulate(max_arity, names, 0, |_, _| 0)
}

/// One operation in every positive arity; its algebras are semigroups.
pub fn semigroup_operad(max_arity: usize) -> Result<Operad, OperadError> {
    let names = level_names(max_arity, |n| if n == 0 { Vec::new() } else { vec![format!("m{n}")] });
    Operad::tabulate(max_arity, names, 0, |_, _| 0)
}

/// `C(n)` = the `n` projections `Xⁿ → X`.
pub fn projection_operad(max_arity: usize) -> Result<Operad, OperadError> {
    let names = level_names(max_arity, |n| (0..n).map(|i| format!("p{n}_{i}")).collect());
    Operad::tabulate(max_arity, names, 0, |theta, args| {
        args[..theta.index].iter().map(|a| a.arity).sum::<usize>() + args[theta.index].index
    })
}

/// Monoids with a constant `c` such that `c·x·c = c·x`. An n-ary operation
/// is an ordered word in `x₁ … xₙ` with at most one `c`, kept at its first
/// occurrence: `w{n}` has none and `c{n}_{g}` has it in gap `g`. Not
/// isomorphic to its reverse.
pub fn first_marker_operad(max_arity: usize) -> Result<Operad, OperadError> {
    let names =
        level_names(max_arity, |n| std::iter::once(format!("w{n}")).chain((0..=n).map(|g| format!("c{n}_{g}"))).collect());
    Operad::tabulate(max_arity, names, 0, |theta, args| {
        let marker = theta.index.checked_sub(1);
        let mut offset = 0;
        for (i, a) in args.iter().enumerate() {
            if marker == Some(i) {
                return offset + 1;
            }
            if a.index > 0 {
                return offset + a.index;
            }
            offset += a.arity;
        }
        if marker == Some(args.len()) {
            offset + 1
        } else {
            0
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples_are_valid() {
        for n in 1..=5 {
            let t = terminal_operad(n).unwrap();
            let r = validate_operad(&t);
            assert!(r.is_valid() && r.associativity_checked > 0);
        }
        for c in [sets_operad(3), semigroup_operad(3), projection_operad(3), first_marker_operad(3)] {
            let c = c.unwrap();
            assert!(validate_operad(&c).is_valid(), "{c:?}");
            assert!(validate_operad(&reverse_operad(&c)).is_valid());
            assert_eq!(reverse_operad(&reverse_operad(&c)), c);
        }
    }

    #[test]
    fn perturbation_is_reported() {
        let c = first_marker_operad(2).unwrap();
        let mut entries = operad_entries(&c);
        let k = entries.iter().position(|(o, a, _)| o == "c2_0" && a == &["w1".to_string(), "w1".to_string()]).unwrap();
        entries[k].2 = "c2_1".into();
        let broken = Operad::from_entries(2, c.names.clone(), 0, &entries).unwrap();
        let report = validate_operad(&broken);
        assert!(!report.associativity_violations.is_empty());
    }

    #[test]
    fn entries_round_trip_and_errors() {
        let c = projection_operad(3).unwrap();
        let entries = operad_entries(&c);
        assert_eq!(Operad::from_entries(3, c.names.clone(), 0, &entries).unwrap(), c);
        let mut dangling = entries.clone();
        dangling[0].2 = "nowhere".into();
        assert_eq!(Operad::from_entries(3, c.names.clone(), 0, &dangling), Err(OperadError::UnknownName("nowhere".into())));
        assert!(matches!(Operad::from_entries(3, c.names.clone(), 0, &entries[1..]), Err(OperadError::Missing(_))));
        assert_eq!(Operad::from_entries(3, c.names.clone(), 5, &entries), Err(OperadError::Identity(5)));
    }

    #[test]
    fn reverse_changes_composition() {
        let p = projection_operad(3).unwrap();
        assert_eq!(p.size(2), 2);
        let rev = reverse_operad(&p);
        let differs = p.instances().iter().any(|(t, a)| p.compose(*t, a) != rev.compose(*t, a));
        assert!(differs);
        assert!(operad_isomorphism(&p, &rev).is_some());
        let t = terminal_operad(4).unwrap();
        assert_eq!(reverse_operad(&t), t);
    }

    #[test]
    fn first_marker_is_not_isomorphic_to_its_reverse() {
        for n in 2..=3 {
            let c = first_marker_operad(n).unwrap();
            assert_eq!(c.size(2), 4);
            assert!(operad_isomorphism(&c, &c).is_some());
            assert_eq!(operad_isomorphism(&c, &reverse_operad(&c)), None);
        }
    }
}
