use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use super::state::Store;

/// Terms over the global-store operations, with variables `x_0 … x_{n-1}`.
/// `Lookup(ℓ, ts)` continues with `ts[v]` when location `ℓ` holds `v`;
/// `Update(ℓ, v, t)` writes `v` to `ℓ`, then continues with `t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StoreTerm {
    Var(usize),
    Lookup(usize, Vec<StoreTerm>),
    Update(usize, usize, Box<StoreTerm>),
}

use StoreTerm::{Lookup, Update, Var};

impl fmt::Display for StoreTerm {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var(i) => write!(out, "x{i}"),
            Lookup(l, ts) => {
                write!(out, "lookup_{l}(")?;
                for (i, t) in ts.iter().enumerate() {
                    if i > 0 {
                        write!(out, ",")?;
                    }
                    write!(out, "{t}")?;
                }
                write!(out, ")")
            }
            Update(l, v, t) => write!(out, "update_{l},{v}({t})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("variable x{0} out of range")]
    Variable(usize),
    #[error("location {0} out of range")]
    Location(usize),
    #[error("value {0} out of range")]
    Value(usize),
    #[error("lookup on location {loc} has {got} branches, expected {expected}")]
    Branches { loc: usize, got: usize, expected: usize },
    #[error("parse error at byte {0}")]
    Parse(usize),
    #[error("normalization exceeded {0} steps")]
    StepBudget(usize),
}

impl StoreTerm {
    pub fn lookup(l: usize, ts: Vec<StoreTerm>) -> Self {
        Lookup(l, ts)
    }

    pub fn update(l: usize, v: usize, t: StoreTerm) -> Self {
        Update(l, v, Box::new(t))
    }

    pub fn depth(&self) -> usize {
        match self {
            Var(_) => 0,
            Lookup(_, ts) => 1 + ts.iter().map(StoreTerm::depth).max().unwrap_or(0),
            Update(_, _, t) => 1 + t.depth(),
        }
    }

    pub fn check(&self, store: Store, n: usize) -> Result<(), TermError> {
        match self {
            Var(i) if *i >= n => Err(TermError::Variable(*i)),
            Var(_) => Ok(()),
            Lookup(l, _) if *l >= store.locations => Err(TermError::Location(*l)),
            Lookup(l, ts) if ts.len() != store.values => {
                Err(TermError::Branches { loc: *l, got: ts.len(), expected: store.values })
            }
            Lookup(_, ts) => ts.iter().try_for_each(|t| t.check(store, n)),
            Update(l, _, _) if *l >= store.locations => Err(TermError::Location(*l)),
            Update(_, v, _) if *v >= store.values => Err(TermError::Value(*v)),
            Update(_, _, t) => t.check(store, n),
        }
    }

    /// Run from state `s`: the final state and variable.
    pub fn eval(&self, store: Store, mut s: usize) -> (usize, usize) {
        let mut t = self;
        loop {
            match t {
                Var(i) => return (s, *i),
                Lookup(l, ts) => t = &ts[store.read(s, *l)],
                Update(l, v, next) => {
                    s = store.write(s, *l, *v);
                    t = next;
                }
            }
        }
    }

    pub fn parse(src: &str) -> Result<StoreTerm, TermError> {
        let mut p = Parser { src: src.as_bytes(), at: 0 };
        let t = p.term()?;
        p.skip_ws();
        if p.at != p.src.len() {
            return Err(TermError::Parse(p.at));
        }
        Ok(t)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    at: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.at < self.src.len() && self.src[self.at].is_ascii_whitespace() {
            self.at += 1;
        }
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.src[self.at..].starts_with(s.as_bytes()) {
            self.at += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<(), TermError> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(TermError::Parse(self.at))
        }
    }

    fn number(&mut self) -> Result<usize, TermError> {
        self.skip_ws();
        let start = self.at;
        while self.at < self.src.len() && self.src[self.at].is_ascii_digit() {
            self.at += 1;
        }
        std::str::from_utf8(&self.src[start..self.at]).unwrap().parse().map_err(|_| TermError::Parse(start))
    }

    fn term(&mut self) -> Result<StoreTerm, TermError> {
        if self.eat("lookup_") {
            let l = self.number()?;
            self.expect("(")?;
            let mut ts = vec![self.term()?];
            while self.eat(",") {
                ts.push(self.term()?);
            }
            self.expect(")")?;
            Ok(Lookup(l, ts))
        } else if self.eat("update_") {
            let l = self.number()?;
            self.expect(",")?;
            let v = self.number()?;
            self.expect("(")?;
            let t = self.term()?;
            self.expect(")")?;
            Ok(StoreTerm::update(l, v, t))
        } else if self.eat("x") {
            Ok(Var(self.number()?))
        } else {
            Err(TermError::Parse(self.at))
        }
    }
}

/// `⟦t⟧: S → S × [n]` as a table indexed by state.
pub fn denote_store_term(t: &StoreTerm, store: Store, n: usize) -> Result<Vec<(usize, usize)>, TermError> {
    t.check(store, n)?;
    Ok((0..store.num_states()).map(|s| t.eval(store, s)).collect())
}

/// Lookups on every location in order, then updates of every location in
/// order, then the variable.
pub fn canonical_store_term(f: &[(usize, usize)], store: Store) -> StoreTerm {
    fn build(f: &[(usize, usize)], store: Store, loc: usize, read: &mut Vec<usize>) -> StoreTerm {
        if loc == store.locations {
            let (s1, x) = f[store.state_of(read)];
            return (0..store.locations).rev().fold(Var(x), |t, l| StoreTerm::update(l, store.read(s1, l), t));
        }
        let ts = (0..store.values)
            .map(|v| {
                read.push(v);
                let t = build(f, store, loc + 1, read);
                read.pop();
                t
            })
            .collect();
        Lookup(loc, ts)
    }
    build(f, store, 0, &mut Vec::with_capacity(store.locations))
}

/// The seven global-store laws.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Law {
    AnnihilationLookupUpdate,
    InteractionLookupLookup,
    InteractionUpdateUpdate,
    InteractionUpdateLookup,
    CommutationLookupLookup,
    CommutationUpdateUpdate,
    CommutationUpdateLookup,
}

impl Law {
    pub const ALL: [Law; 7] = [
        Law::AnnihilationLookupUpdate,
        Law::InteractionLookupLookup,
        Law::InteractionUpdateUpdate,
        Law::InteractionUpdateLookup,
        Law::CommutationLookupLookup,
        Law::CommutationUpdateUpdate,
        Law::CommutationUpdateLookup,
    ];

    pub fn number(self) -> usize {
        self as usize + 1
    }

    pub fn name(self) -> &'static str {
        match self {
            Law::AnnihilationLookupUpdate => "annihilation lookup-update",
            Law::InteractionLookupLookup => "interaction lookup-lookup",
            Law::InteractionUpdateUpdate => "interaction update-update",
            Law::InteractionUpdateLookup => "interaction update-lookup",
            Law::CommutationLookupLookup => "commutation lookup-lookup",
            Law::CommutationUpdateUpdate => "commutation update-update",
            Law::CommutationUpdateLookup => "commutation update-lookup",
        }
    }

    /// Number of subterm slots of an instance.
    pub fn arity(self, store: Store) -> usize {
        let v = store.values;
        match self {
            Law::AnnihilationLookupUpdate | Law::InteractionUpdateUpdate | Law::CommutationUpdateUpdate => 1,
            Law::InteractionLookupLookup | Law::CommutationLookupLookup => v * v,
            Law::InteractionUpdateLookup | Law::CommutationUpdateLookup => v,
        }
    }

    /// Location and value parameters `(ℓ, ℓ', v, v')` of every instance;
    /// unused parameters are 0, and `ℓ ≠ ℓ'` for the commutations.
    pub fn parameters(self, store: Store) -> Vec<(usize, usize, usize, usize)> {
        let (ls, vs) = (0..store.locations, 0..store.values);
        let mut out = Vec::new();
        for l in ls.clone() {
            match self {
                Law::AnnihilationLookupUpdate | Law::InteractionLookupLookup => out.push((l, 0, 0, 0)),
                Law::InteractionUpdateUpdate => {
                    for v in vs.clone() {
                        for v2 in vs.clone() {
                            out.push((l, 0, v, v2));
                        }
                    }
                }
                Law::InteractionUpdateLookup => out.extend(vs.clone().map(|v| (l, 0, v, 0))),
                Law::CommutationLookupLookup => out.extend(ls.clone().filter(|&l2| l2 != l).map(|l2| (l, l2, 0, 0))),
                Law::CommutationUpdateUpdate => {
                    for l2 in ls.clone().filter(|&l2| l2 != l) {
                        for v in vs.clone() {
                            for v2 in vs.clone() {
                                out.push((l, l2, v, v2));
                            }
                        }
                    }
                }
                Law::CommutationUpdateLookup => {
                    for l2 in ls.clone().filter(|&l2| l2 != l) {
                        out.extend(vs.clone().map(|v| (l, l2, v, 0)));
                    }
                }
            }
        }
        out
    }

    /// Both sides of an instance; `ts` fills the subterm slots (`ts[v·|V|+w]`
    /// for the two-level lookups).
    pub fn instance(
        self,
        store: Store,
        (l, l2, v, v2): (usize, usize, usize, usize),
        ts: &[StoreTerm],
    ) -> (StoreTerm, StoreTerm) {
        let nv = store.values;
        let up = StoreTerm::update;
        match self {
            Law::AnnihilationLookupUpdate => (Lookup(l, (0..nv).map(|w| up(l, w, ts[0].clone())).collect()), ts[0].clone()),
            Law::InteractionLookupLookup => (
                Lookup(l, (0..nv).map(|a| Lookup(l, (0..nv).map(|b| ts[a * nv + b].clone()).collect())).collect()),
                Lookup(l, (0..nv).map(|a| ts[a * nv + a].clone()).collect()),
            ),
            Law::InteractionUpdateUpdate => (up(l, v, up(l, v2, ts[0].clone())), up(l, v2, ts[0].clone())),
            Law::InteractionUpdateLookup => (up(l, v, Lookup(l, ts.to_vec())), up(l, v, ts[v].clone())),
            Law::CommutationLookupLookup => (
                Lookup(l, (0..nv).map(|a| Lookup(l2, (0..nv).map(|b| ts[a * nv + b].clone()).collect())).collect()),
                Lookup(l2, (0..nv).map(|b| Lookup(l, (0..nv).map(|a| ts[a * nv + b].clone()).collect())).collect()),
            ),
            Law::CommutationUpdateUpdate => (up(l, v, up(l2, v2, ts[0].clone())), up(l2, v2, up(l, v, ts[0].clone()))),
            Law::CommutationUpdateLookup => {
                (up(l, v, Lookup(l2, ts.to_vec())), Lookup(l2, ts.iter().map(|t| up(l, v, t.clone())).collect()))
            }
        }
    }
}

/// One left-to-right application of a law at the root, if it matches.
/// Commutations only fire when they move the smaller location outwards.
pub fn rewrite_root(law: Law, t: &StoreTerm) -> Option<StoreTerm> {
    match (law, t) {
        (Law::AnnihilationLookupUpdate, Lookup(l, ts)) => {
            let Update(l0, _, body) = &ts[0] else { return None };
            let ok = ts.iter().enumerate().all(|(w, b)| matches!(b, Update(lb, vb, bb) if lb == l && *vb == w && bb == body));
            (ok && l0 == l).then(|| (**body).clone())
        }
        (Law::InteractionLookupLookup, Lookup(l, ts)) => {
            let ok = ts.iter().all(|b| matches!(b, Lookup(lb, _) if lb == l));
            ok.then(|| {
                Lookup(
                    *l,
                    ts.iter()
                        .enumerate()
                        .map(|(a, b)| if let Lookup(_, inner) = b { inner[a].clone() } else { unreachable!() })
                        .collect(),
                )
            })
        }
        (Law::InteractionUpdateUpdate, Update(l, _, body)) => match &**body {
            Update(l2, v2, inner) if l2 == l => Some(StoreTerm::update(*l, *v2, (**inner).clone())),
            _ => None,
        },
        (Law::InteractionUpdateLookup, Update(l, v, body)) => match &**body {
            Lookup(l2, ts) if l2 == l => Some(StoreTerm::update(*l, *v, ts[*v].clone())),
            _ => None,
        },
        (Law::CommutationLookupLookup, Lookup(l, ts)) => {
            let Lookup(l2, first) = &ts[0] else { return None };
            let ok = l2 < l && ts.iter().all(|b| matches!(b, Lookup(lb, _) if lb == l2));
            ok.then(|| {
                Lookup(
                    *l2,
                    (0..first.len())
                        .map(|b| {
                            Lookup(
                                *l,
                                ts.iter()
                                    .map(|a| if let Lookup(_, inner) = a { inner[b].clone() } else { unreachable!() })
                                    .collect(),
                            )
                        })
                        .collect(),
                )
            })
        }
        (Law::CommutationUpdateUpdate, Update(l, v, body)) => match &**body {
            Update(l2, v2, inner) if l2 < l => Some(StoreTerm::update(*l2, *v2, StoreTerm::update(*l, *v, (**inner).clone()))),
            _ => None,
        },
        (Law::CommutationUpdateLookup, Update(l, v, body)) => match &**body {
            Lookup(l2, ts) if l2 != l => Some(Lookup(*l2, ts.iter().map(|t| StoreTerm::update(*l, *v, t.clone())).collect())),
            _ => None,
        },
        _ => None,
    }
}

/// Rewriting to a normal form in two passes.
///
/// Expansion: every path reads each location once, in increasing order,
/// and ends in sorted updates of distinct locations followed by a variable;
/// uses laws 2–7 plus `lookup_ℓ(t,…,t) = t` read right to left and dropping
/// a write of the value just read.
///
/// Reduction: bottom-up, a lookup whose branches agree up to writes of the
/// looked-up location is removed (law 1 with the commutations).
pub fn normalize_store_term(t: &StoreTerm, store: Store, n: usize, budget: usize) -> Result<StoreTerm, TermError> {
    t.check(store, n)?;
    let mut r = Rewriter { store, steps: 0, budget };
    let full = r.expand(t.clone(), 0, &mut Vec::new())?;
    Ok(reduce(full))
}

pub const DEFAULT_STEP_BUDGET: usize = 1 << 20;

struct Rewriter {
    store: Store,
    steps: usize,
    budget: usize,
}

impl Rewriter {
    fn step(&mut self) -> Result<(), TermError> {
        self.steps += 1;
        if self.steps > self.budget {
            Err(TermError::StepBudget(self.budget))
        } else {
            Ok(())
        }
    }

    /// Full form of `t` below reads of locations `0..level` with values `read`.
    fn expand(&mut self, t: StoreTerm, level: usize, read: &mut Vec<usize>) -> Result<StoreTerm, TermError> {
        self.step()?;
        match t {
            // already read on this path: law 2 (through law 5)
            Lookup(l, mut ts) if l < level => self.expand(ts.swap_remove(read[l]), level, read),
            Lookup(l, ts) if l == level => {
                let mut out = Vec::with_capacity(ts.len());
                for (v, b) in ts.into_iter().enumerate() {
                    read.push(v);
                    out.push(self.expand(b, level + 1, read)?);
                    read.pop();
                }
                Ok(Lookup(l, out))
            }
            Update(l, v, body) => {
                // the body sees the written value if `l` was already read
                let body = if l < level {
                    let before = std::mem::replace(&mut read[l], v);
                    let body = self.expand(*body, level, read);
                    read[l] = before;
                    body?
                } else {
                    self.expand(*body, level, read)?
                };
                self.push_update(l, v, body, read)
            }
            // Var, or a lookup of a later location: t = lookup_level(t, …, t)
            other if level < self.store.locations => {
                self.step()?;
                let copies = vec![other; self.store.values];
                self.expand(Lookup(level, copies), level, read)
            }
            Var(x) => Ok(Var(x)),
            Lookup(..) => unreachable!("every location is read by the last level"),
        }
    }

    /// `update_{l,v}(body)` for `body` in full form below the current reads.
    fn push_update(&mut self, l: usize, v: usize, body: StoreTerm, read: &mut Vec<usize>) -> Result<StoreTerm, TermError> {
        self.step()?;
        match body {
            Lookup(l2, ts) if l2 == l => {
                // law 4, then read `l` again. `ts[v]` never looks up `l`, so it
                // is a full form under any value of `l` once its leaves absorb
                // the write.
                let chosen = ts[v].clone();
                let mut out = Vec::with_capacity(ts.len());
                for w in 0..ts.len() {
                    read.push(w);
                    out.push(self.push_update(l, v, chosen.clone(), read)?);
                    read.pop();
                }
                Ok(Lookup(l2, out))
            }
            Lookup(l2, ts) => {
                // law 7
                let mut out = Vec::with_capacity(ts.len());
                for (w, b) in ts.into_iter().enumerate() {
                    read.push(w);
                    out.push(self.push_update(l, v, b, read)?);
                    read.pop();
                }
                Ok(Lookup(l2, out))
            }
            leaf => Ok(self.insert_write(l, v, leaf, read)),
        }
    }

    /// Merge a write into a leaf `update…(x)`: laws 3 and 6, dropping a
    /// write of the value just read.
    fn insert_write(&mut self, l: usize, v: usize, leaf: StoreTerm, read: &[usize]) -> StoreTerm {
        let mut writes = BTreeMap::new();
        let mut t = leaf;
        while let Update(l2, v2, inner) = t {
            writes.insert(l2, v2);
            t = *inner;
        }
        let Var(x) = t else { unreachable!("leaf ends in a variable") };
        writes.entry(l).or_insert(v);
        leaf_term(&writes, x, read)
    }
}

fn leaf_term(writes: &BTreeMap<usize, usize>, x: usize, read: &[usize]) -> StoreTerm {
    writes.iter().rev().filter(|&(&l, &v)| read.get(l) != Some(&v)).fold(Var(x), |t, (&l, &v)| StoreTerm::update(l, v, t))
}

fn reduce(t: StoreTerm) -> StoreTerm {
    match t {
        Lookup(l, ts) => {
            let ts: Vec<StoreTerm> = ts.into_iter().map(reduce).collect();
            merge(&ts, l).unwrap_or(Lookup(l, ts))
        }
        leaf => leaf,
    }
}

/// A term `t` not reading `l` with `branches[w]` equal to `t` with writes
/// of `w` to `l` dropped, if one exists.
fn merge(branches: &[StoreTerm], l: usize) -> Option<StoreTerm> {
    match &branches[0] {
        Lookup(l2, first) => {
            let mut cols: Vec<Vec<StoreTerm>> = vec![Vec::with_capacity(branches.len()); first.len()];
            for b in branches {
                let Lookup(lb, ts) = b else { return None };
                if lb != l2 {
                    return None;
                }
                for (c, t) in ts.iter().enumerate() {
                    cols[c].push(t.clone());
                }
            }
            let merged: Option<Vec<StoreTerm>> = cols.iter().map(|col| merge(col, l)).collect();
            merged.map(|ts| Lookup(*l2, ts))
        }
        _ => {
            let mut split = Vec::with_capacity(branches.len());
            for b in branches {
                if matches!(b, Lookup(..)) {
                    return None;
                }
                let (mut writes, x) = leaf_parts(b);
                let own = writes.remove(&l);
                split.push((writes, x, own));
            }
            let (writes, x, _) = &split[0];
            if split.iter().any(|(w, y, _)| w != writes || y != x) {
                return None;
            }
            let own: Vec<Option<usize>> = split.iter().map(|s| s.2).collect();
            let mut writes = writes.clone();
            if own.iter().all(Option::is_none) {
                return Some(leaf_term(&writes, *x, &[]));
            }
            let c = own.iter().find_map(|o| *o)?;
            let constant = own.iter().enumerate().all(|(w, o)| if w == c { o.is_none() } else { *o == Some(c) });
            constant.then(|| {
                writes.insert(l, c);
                leaf_term(&writes, *x, &[])
            })
        }
    }
}

fn leaf_parts(t: &StoreTerm) -> (BTreeMap<usize, usize>, usize) {
    let mut writes = BTreeMap::new();
    let mut t = t;
    while let Update(l, v, inner) = t {
        writes.insert(*l, *v);
        t = inner;
    }
    let Var(x) = t else { unreachable!("leaf ends in a variable") };
    (writes, *x)
}

/// All well-formed terms of depth `≤ depth`.
pub fn enumerate_store_terms(store: Store, n: usize, depth: usize) -> Vec<StoreTerm> {
    let mut terms: Vec<StoreTerm> = (0..n).map(Var).collect();
    for _ in 0..depth {
        terms = grow(&terms, store, n).collect();
    }
    terms
}

/// Terms one level deeper than `sub`: variables, lookups and updates over
/// `sub`.
pub fn grow<'a>(sub: &'a [StoreTerm], store: Store, n: usize) -> impl Iterator<Item = StoreTerm> + 'a {
    let vars = (0..n).map(Var);
    let lookups = (0..store.locations).flat_map(move |l| {
        let total = sub.len().pow(store.values as u32);
        (0..total).map(move |mut code| {
            let ts = (0..store.values)
                .map(|_| {
                    let t = sub[code % sub.len()].clone();
                    code /= sub.len();
                    t
                })
                .collect();
            Lookup(l, ts)
        })
    });
    let updates = (0..store.locations)
        .flat_map(move |l| (0..store.values).flat_map(move |v| sub.iter().map(move |t| StoreTerm::update(l, v, t.clone()))));
    vars.chain(lookups).chain(updates)
}

#[cfg(test)]
mod tests {
    use std::collections::HashMap;

    use super::*;

    const S22: Store = Store { locations: 2, values: 2 };

    fn nf(t: &StoreTerm, store: Store, n: usize) -> StoreTerm {
        normalize_store_term(t, store, n, DEFAULT_STEP_BUDGET).unwrap()
    }

    #[test]
    fn parse_display_roundtrip() {
        let src = "update_0,1(lookup_1(x0,update_1,0(x1)))";
        let t = StoreTerm::parse(src).unwrap();
        assert_eq!(t.to_string(), src);
        assert_eq!(t.depth(), 3);
        assert_eq!(StoreTerm::parse(" lookup_0( x0 , x1 ) ").unwrap().to_string(), "lookup_0(x0,x1)");
        assert!(matches!(StoreTerm::parse("lookup_0(x0"), Err(TermError::Parse(_))));
        assert!(matches!(StoreTerm::parse("x0 x1"), Err(TermError::Parse(_))));
        let bad = StoreTerm::parse("lookup_0(x0)").unwrap();
        assert_eq!(bad.check(S22, 1), Err(TermError::Branches { loc: 0, got: 1, expected: 2 }));
        assert_eq!(Var(3).check(S22, 2), Err(TermError::Variable(3)));
    }

    #[test]
    fn small_examples() {
        let one = Store::new(1, 2);
        let t = StoreTerm::parse("update_0,1(lookup_0(x0,x1))").unwrap();
        assert_eq!(nf(&t, one, 2).to_string(), "update_0,1(x1)");
        assert_eq!(nf(&t, S22, 2).to_string(), "update_0,1(x1)");
        let t = StoreTerm::parse("lookup_0(update_0,0(x0),update_0,1(x0))").unwrap();
        assert_eq!(nf(&t, S22, 1), Var(0));
        let a = StoreTerm::parse("update_1,0(update_1,1(lookup_0(x0,x1)))").unwrap();
        let b = StoreTerm::parse("update_1,1(lookup_0(x0,x1))").unwrap();
        assert_eq!(nf(&a, S22, 2), nf(&b, S22, 2));
        assert_eq!(nf(&b, S22, 2).to_string(), "lookup_0(update_1,1(x0),update_1,1(x1))");
        // a write to an already-read location changes what the body reads
        let t = StoreTerm::parse("lookup_0(update_0,1(lookup_0(x1,x0)),x0)").unwrap();
        assert_eq!(nf(&t, S22, 2).to_string(), "update_0,1(x0)");
    }

    #[test]
    fn term_counts() {
        let t1 = enumerate_store_terms(S22, 2, 1);
        let t2 = enumerate_store_terms(S22, 2, 2);
        assert_eq!((enumerate_store_terms(S22, 2, 0).len(), t1.len(), t2.len()), (2, 18, 722));
        // T_{k+1} = n + |L| T_k^|V| + |L||V| T_k
        assert_eq!(grow(&t2, S22, 2).count(), 2 + 2 * 722 * 722 + 4 * 722);
    }

    #[test]
    fn budget_is_enforced() {
        let t = StoreTerm::parse("update_1,1(lookup_0(x0,x1))").unwrap();
        assert_eq!(normalize_store_term(&t, S22, 2, 3), Err(TermError::StepBudget(3)));
    }

    #[test]
    fn normal_forms_decide_equality_depth_two() {
        for store in [S22, Store::new(1, 3), Store::new(3, 1), Store::new(2, 3)] {
            let depth = if store.values == 3 && store.locations == 2 { 1 } else { 2 };
            let mut by_meaning: HashMap<Vec<(usize, usize)>, StoreTerm> = HashMap::new();
            for t in enumerate_store_terms(store, 2, depth) {
                let d = denote_store_term(&t, store, 2).unwrap();
                let n = nf(&t, store, 2);
                assert_eq!(denote_store_term(&n, store, 2).unwrap(), d, "{t}");
                assert_eq!(nf(&n, store, 2), n, "not idempotent at {t}");
                assert!(n.depth() <= canonical_store_term(&d, store).depth());
                assert_eq!(denote_store_term(&canonical_store_term(&d, store), store, 2).unwrap(), d);
                assert_eq!(by_meaning.entry(d).or_insert_with(|| n.clone()), &n, "{t}");
            }
        }
    }

    fn check_sound(law: Law, store: Store, n: usize, pool: &[StoreTerm], limit: Option<usize>) {
        let k = law.arity(store);
        for params in law.parameters(store) {
            let total = pool.len().pow(k as u32);
            for code in 0..limit.map_or(total, |l| l.min(total)) {
                let mut c = code;
                let ts: Vec<StoreTerm> = (0..k)
                    .map(|_| {
                        let t = pool[c % pool.len()].clone();
                        c /= pool.len();
                        t
                    })
                    .collect();
                let (lhs, rhs) = law.instance(store, params, &ts);
                assert_eq!(
                    denote_store_term(&lhs, store, n).unwrap(),
                    denote_store_term(&rhs, store, n).unwrap(),
                    "law {} at {lhs}",
                    law.number()
                );
                if let Some(r) = rewrite_root(law, &lhs) {
                    assert_eq!(denote_store_term(&r, store, n).unwrap(), denote_store_term(&lhs, store, n).unwrap());
                }
            }
        }
    }

    #[test]
    fn laws_are_sound() {
        let d1 = enumerate_store_terms(S22, 2, 1);
        let d2 = enumerate_store_terms(S22, 2, 2);
        for law in Law::ALL {
            // generic instance: distinct variables in every slot
            let k = law.arity(S22);
            let fresh: Vec<StoreTerm> = (0..k).map(Var).collect();
            for params in law.parameters(S22) {
                let (lhs, rhs) = law.instance(S22, params, &fresh);
                assert_eq!(denote_store_term(&lhs, S22, k).unwrap(), denote_store_term(&rhs, S22, k).unwrap());
            }
            if k <= 2 {
                check_sound(law, S22, 2, &d2, None);
            } else {
                check_sound(law, S22, 2, &d1, None);
            }
        }
    }

    #[test]
    fn rewrite_root_matches_left_sides() {
        let fresh: Vec<StoreTerm> = (0..4).map(Var).collect();
        for law in Law::ALL {
            for params in law.parameters(S22) {
                let (lhs, rhs) = law.instance(S22, params, &fresh);
                let oriented = !matches!(law, Law::CommutationLookupLookup | Law::CommutationUpdateUpdate) || params.1 < params.0;
                let got = rewrite_root(law, &lhs);
                if oriented {
                    assert_eq!(got.as_ref(), Some(&rhs), "law {}", law.number());
                } else {
                    assert_eq!(got, None);
                }
            }
        }
        assert_eq!(rewrite_root(Law::InteractionUpdateLookup, &Var(0)), None);
    }
}
