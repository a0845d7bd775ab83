use std::collections::HashMap;

use thiserror::Error;

use crate::cat::{ArrowData, FinCategory};

/// A weakly monotone map `[dom] → [cod]`, where `[n] = {0, …, n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonotoneMap {
    pub dom: usize,
    pub cod: usize,
    pub values: Vec<usize>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DeltaError {
    #[error("expected {expected} values, got {got}")]
    Length { expected: usize, got: usize },
    #[error("value {value} exceeds codomain [{cod}]")]
    OutOfRange { value: usize, cod: usize },
    #[error("values are not weakly increasing at position {0}")]
    NotMonotone(usize),
    #[error("cannot compose: codomain [{0}] differs from domain [{1}]")]
    Mismatch(usize, usize),
    #[error("index {index} invalid for a generator on [{n}]")]
    BadIndex { index: usize, n: usize },
}

impl MonotoneMap {
    pub fn new(dom: usize, cod: usize, values: Vec<usize>) -> Result<Self, DeltaError> {
        if values.len() != dom + 1 {
            return Err(DeltaError::Length { expected: dom + 1, got: values.len() });
        }
        if let Some(&v) = values.iter().find(|&&v| v > cod) {
            return Err(DeltaError::OutOfRange { value: v, cod });
        }
        if let Some(i) = (1..values.len()).find(|&i| values[i - 1] > values[i]) {
            return Err(DeltaError::NotMonotone(i));
        }
        Ok(MonotoneMap { dom, cod, values })
    }

    pub fn identity(n: usize) -> Self {
        MonotoneMap { dom: n, cod: n, values: (0..=n).collect() }
    }

    /// Coface `δ_i : [n-1] → [n]`, skipping `i`.
    pub fn face(n: usize, i: usize) -> Result<Self, DeltaError> {
        if n == 0 || i > n {
            return Err(DeltaError::BadIndex { index: i, n });
        }
        let values = (0..n).map(|k| if k < i { k } else { k + 1 }).collect();
        Ok(MonotoneMap { dom: n - 1, cod: n, values })
    }

    /// Codegeneracy `σ_j : [n+1] → [n]`, hitting `j` twice.
    pub fn degeneracy(n: usize, j: usize) -> Result<Self, DeltaError> {
        if j > n {
            return Err(DeltaError::BadIndex { index: j, n });
        }
        let values = (0..=n + 1).map(|k| if k <= j { k } else { k - 1 }).collect();
        Ok(MonotoneMap { dom: n + 1, cod: n, values })
    }

    /// `i ↦ i + k` from `[m]` into `[n]`.
    pub fn shift(m: usize, n: usize, k: usize) -> Self {
        assert!(m + k <= n);
        MonotoneMap { dom: m, cod: n, values: (k..=m + k).collect() }
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }
}

/// `g ∘ f`: first `f`, then `g`.
pub fn compose_monotone(f: &MonotoneMap, g: &MonotoneMap) -> Result<MonotoneMap, DeltaError> {
    if f.cod != g.dom {
        return Err(DeltaError::Mismatch(f.cod, g.dom));
    }
    Ok(MonotoneMap { dom: f.dom, cod: g.cod, values: f.values.iter().map(|&x| g.values[x]).collect() })
}

/// All monotone maps `[m] → [n]`, in lexicographic order of values.
pub fn enumerate_monotone(m: usize, n: usize) -> Vec<MonotoneMap> {
    let mut out = Vec::new();
    let mut values = Vec::with_capacity(m + 1);
    fn go(m: usize, n: usize, lo: usize, values: &mut Vec<usize>, out: &mut Vec<MonotoneMap>) {
        if values.len() == m + 1 {
            out.push(MonotoneMap { dom: m, cod: n, values: values.clone() });
            return;
        }
        for v in lo..=n {
            values.push(v);
            go(m, n, v, values, out);
            values.pop();
        }
    }
    go(m, n, 0, &mut values, &mut out);
    out
}

/// `f = δ_{i₁} ∘ … ∘ δ_{i_k} ∘ σ_{j₁} ∘ … ∘ σ_{j_h}` with
/// `cod ≥ i₁ > … > i_k ≥ 0` and `0 ≤ j₁ < … < j_h < dom`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DeltaNormalForm {
    pub dom: usize,
    pub cod: usize,
    pub deltas: Vec<usize>,
    pub sigmas: Vec<usize>,
}

impl DeltaNormalForm {
    /// The ordering and dimension constraints.
    pub fn is_index_valid(&self) -> bool {
        let (n, m) = (self.dom, self.cod);
        let (k, h) = (self.deltas.len(), self.sigmas.len());
        n + k == m + h
            && self.deltas.windows(2).all(|w| w[0] > w[1])
            && self.deltas.first().map_or(true, |&i| i <= m)
            && self.sigmas.windows(2).all(|w| w[0] < w[1])
            && self.sigmas.last().map_or(true, |&j| j < n)
    }

    /// The generator sequence in application order: degeneracies from the
    /// last, then faces from the last.
    pub fn steps(&self) -> Vec<Generator> {
        let mut level = self.dom;
        let mut out = Vec::new();
        for &j in self.sigmas.iter().rev() {
            level -= 1;
            out.push(Generator::Degeneracy { n: level, j });
        }
        for &i in self.deltas.iter().rev() {
            level += 1;
            out.push(Generator::Face { n: level, i });
        }
        out
    }

    pub fn recompose(&self) -> Result<MonotoneMap, DeltaError> {
        let mut acc = MonotoneMap::identity(self.dom);
        for step in self.steps() {
            let g = match step {
                Generator::Degeneracy { n, j } => MonotoneMap::degeneracy(n, j)?,
                Generator::Face { n, i } => MonotoneMap::face(n, i)?,
            };
            acc = compose_monotone(&acc, &g)?;
        }
        Ok(acc)
    }
}

/// A coface `δ_i: [n-1] → [n]` or codegeneracy `σ_j: [n+1] → [n]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    Face { n: usize, i: usize },
    Degeneracy { n: usize, j: usize },
}

/// Peel degeneracies at repeated values left to right, then faces at omitted
/// values top down.
pub fn normal_form(f: &MonotoneMap) -> DeltaNormalForm {
    let sigmas = (0..f.dom).filter(|&j| f.values[j] == f.values[j + 1]).collect();
    let mut hit = vec![false; f.cod + 1];
    for &v in &f.values {
        hit[v] = true;
    }
    let deltas = (0..=f.cod).rev().filter(|&i| !hit[i]).collect();
    DeltaNormalForm { dom: f.dom, cod: f.cod, deltas, sigmas }
}

/// `binomial(n, k)` for small arguments.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Name of a monotone map as an arrow of [`delta_category`].
pub fn monotone_name(f: &MonotoneMap) -> String {
    let vs: Vec<String> = f.values.iter().map(|v| v.to_string()).collect();
    format!("[{}]>[{}]:{}", f.dom, f.cod, vs.join(","))
}

/// `Δ` truncated to `[0] … [n_max]`, with every monotone map as an arrow.
pub fn delta_category(n_max: usize) -> FinCategory {
    let objects: Vec<String> = (0..=n_max).map(|n| format!("[{n}]")).collect();
    let mut maps = Vec::new();
    for m in 0..=n_max {
        for n in 0..=n_max {
            maps.extend(enumerate_monotone(m, n));
        }
    }
    let index: HashMap<&MonotoneMap, usize> = maps.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let arrows = maps.iter().map(|f| ArrowData { name: monotone_name(f), src: f.dom, tgt: f.cod }).collect();
    let identities = (0..=n_max).map(|n| index[&MonotoneMap::identity(n)]).collect();
    let mut comp = HashMap::new();
    for (i, f) in maps.iter().enumerate() {
        for (j, g) in maps.iter().enumerate() {
            if f.cod == g.dom {
                comp.insert((i, j), index[&compose_monotone(f, g).expect("composable")]);
            }
        }
    }
    FinCategory::from_parts(objects, arrows, identities, comp)
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;

    /// Every index-valid generator word `[n] → [m]`, composed out.
    fn all_words(n: usize, m: usize) -> Vec<(DeltaNormalForm, MonotoneMap)> {
        let mut out = Vec::new();
        for h in 0..=n {
            if m + h < n {
                continue;
            }
            let k = m + h - n;
            for sigmas in subsets_increasing(n, h) {
                for mut deltas in subsets_increasing(m + 1, k) {
                    deltas.reverse();
                    let nf = DeltaNormalForm { dom: n, cod: m, deltas, sigmas: sigmas.clone() };
                    assert!(nf.is_index_valid());
                    let f = nf.recompose().unwrap();
                    out.push((nf, f));
                }
            }
        }
        out
    }

    fn subsets_increasing(range: usize, size: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        fn go(range: usize, size: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == size {
                out.push(cur.clone());
                return;
            }
            for v in lo..range {
                cur.push(v);
                go(range, size, v + 1, cur, out);
                cur.pop();
            }
        }
        go(range, size, 0, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn identity_has_empty_normal_form() {
        let nf = normal_form(&MonotoneMap::identity(2));
        assert!(nf.deltas.is_empty() && nf.sigmas.is_empty());
    }

    #[test]
    fn normal_forms_match_generator_enumeration() {
        let words = all_words(2, 1);
        let f = MonotoneMap::new(2, 1, vec![0, 0, 1]).unwrap();
        let (nf, _) = words.iter().find(|(_, g)| *g == f).unwrap();
        assert_eq!(normal_form(&f), *nf);
        assert_eq!(nf.sigmas, vec![0]);
        assert!(nf.deltas.is_empty());

        let words = all_words(0, 1);
        let f = MonotoneMap::new(0, 1, vec![1]).unwrap();
        let (nf, _) = words.iter().find(|(_, g)| *g == f).unwrap();
        assert_eq!(nf.deltas, vec![0]);
        assert_eq!(normal_form(&f), *nf);
    }

    #[test]
    fn small_composites() {
        let d0 = MonotoneMap::face(1, 0).unwrap();
        let s0 = MonotoneMap::degeneracy(0, 0).unwrap();
        assert_eq!(compose_monotone(&d0, &s0).unwrap(), MonotoneMap::identity(0));
        let dd = compose_monotone(&d0, &MonotoneMap::face(2, 0).unwrap()).unwrap();
        assert_eq!(dd.values, vec![2]);
        assert_eq!(normal_form(&dd).recompose().unwrap(), dd);
        let f = MonotoneMap::new(1, 2, vec![0, 2]).unwrap();
        assert_eq!(compose_monotone(&f, &MonotoneMap::identity(2)).unwrap(), f);
    }

    #[test]
    fn normal_form_is_a_bijection_up_to_four() {
        for m in 0..=4 {
            for n in 0..=4 {
                let maps = enumerate_monotone(m, n);
                assert_eq!(maps.len() as u64, binomial((m + n + 1) as u64, (m + 1) as u64));
                let words = all_words(m, n);
                assert_eq!(words.len(), maps.len());
                let forms: HashSet<_> = maps.iter().map(normal_form).collect();
                assert_eq!(forms.len(), maps.len());
                for (nf, f) in &words {
                    assert_eq!(normal_form(f), *nf);
                }
            }
        }
    }
}
