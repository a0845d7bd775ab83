use std::fmt;

use thiserror::Error;

use super::delta::{normal_form, Generator, MonotoneMap};

/// A simplicial set truncated at level `n_max`: carriers `X_0 … X_N` with
/// the generator actions `d_i: X_n → X_{n-1}` and `s_j: X_n → X_{n+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSimplicialSet {
    pub n_max: usize,
    pub levels: Vec<Vec<String>>,
    /// `faces[n][i]` is `d_i` on `X_n`; `faces[0]` is empty.
    pub faces: Vec<Vec<Vec<usize>>>,
    /// `degens[n][j]` is `s_j` on `X_n`, for `n < N`.
    pub degens: Vec<Vec<Vec<usize>>>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SsetError {
    #[error("level {level} is above the truncation {n_max}")]
    OutOfTruncation { level: usize, n_max: usize },
}

/// One failing instance of a simplicial identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialViolation {
    pub identity: &'static str,
    pub level: usize,
    pub i: usize,
    pub j: usize,
    pub element: usize,
}

impl fmt::Display for SimplicialViolation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            out,
            "identity {} fails at level {} with i={}, j={} on element {}",
            self.identity, self.level, self.i, self.j, self.element
        )
    }
}

pub const DD: &str = "d_i d_j = d_{j-1} d_i (i<j)";
pub const SS: &str = "s_i s_j = s_{j+1} s_i (i<=j)";
pub const DS_LOW: &str = "d_i s_j = s_{j-1} d_i (i<j)";
pub const DS_ID: &str = "d_i s_j = 1 (i=j or i=j+1)";
pub const DS_HIGH: &str = "d_i s_j = s_j d_{i-1} (i>j+1)";
pub const SHAPE: &str = "generator maps well-typed";

impl TruncSimplicialSet {
    pub fn size(&self, n: usize) -> usize {
        self.levels[n].len()
    }

    pub fn d(&self, n: usize, i: usize, x: usize) -> usize {
        self.faces[n][i][x]
    }

    pub fn s(&self, n: usize, j: usize, x: usize) -> usize {
        self.degens[n][j][x]
    }

    /// Shape checks, then the three identity families wherever defined.
    pub fn validate(&self) -> Vec<SimplicialViolation> {
        let mut out = Vec::new();
        let nm = self.n_max;
        let shape = |level, i, j| SimplicialViolation { identity: SHAPE, level, i, j, element: 0 };
        if self.levels.len() != nm + 1 || self.faces.len() != nm + 1 || self.degens.len() != nm {
            return vec![shape(0, 0, 0)];
        }
        for n in 1..=nm {
            if self.faces[n].len() != n + 1 {
                out.push(shape(n, 0, 0));
                continue;
            }
            for (i, d) in self.faces[n].iter().enumerate() {
                if d.len() != self.size(n) || d.iter().any(|&y| y >= self.size(n - 1)) {
                    out.push(shape(n, i, 0));
                }
            }
        }
        for n in 0..nm {
            if self.degens[n].len() != n + 1 {
                out.push(shape(n, 0, 0));
                continue;
            }
            for (j, s) in self.degens[n].iter().enumerate() {
                if s.len() != self.size(n) || s.iter().any(|&y| y >= self.size(n + 1)) {
                    out.push(shape(n, 0, j));
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        let mut fail = |identity, level, i, j, element| {
            out.push(SimplicialViolation { identity, level, i, j, element });
        };
        for n in 2..=nm {
            for j in 0..=n {
                for i in 0..j {
                    for x in 0..self.size(n) {
                        if self.d(n - 1, i, self.d(n, j, x)) != self.d(n - 1, j - 1, self.d(n, i, x)) {
                            fail(DD, n, i, j, x);
                        }
                    }
                }
            }
        }
        for n in 0..nm.saturating_sub(1) {
            for j in 0..=n {
                for i in 0..=j {
                    for x in 0..self.size(n) {
                        if self.s(n + 1, i, self.s(n, j, x)) != self.s(n + 1, j + 1, self.s(n, i, x)) {
                            fail(SS, n, i, j, x);
                        }
                    }
                }
            }
        }
        for n in 0..nm {
            for j in 0..=n {
                for i in 0..=n + 1 {
                    for x in 0..self.size(n) {
                        let lhs = self.d(n + 1, i, self.s(n, j, x));
                        let (rhs, name) = if i < j {
                            (self.s(n - 1, j - 1, self.d(n, i, x)), DS_LOW)
                        } else if i == j || i == j + 1 {
                            (x, DS_ID)
                        } else {
                            (self.s(n - 1, j, self.d(n, i - 1, x)), DS_HIGH)
                        };
                        if lhs != rhs {
                            fail(name, n, i, j, x);
                        }
                    }
                }
            }
        }
        out
    }

    /// `X(f): X_cod → X_dom`, as the composite of generator actions along
    /// the normal form of `f`.
    pub fn eval(&self, f: &MonotoneMap) -> Result<Vec<usize>, SsetError> {
        for level in [f.dom, f.cod] {
            if level > self.n_max {
                return Err(SsetError::OutOfTruncation { level, n_max: self.n_max });
            }
        }
        let mut current: Vec<usize> = (0..self.size(f.cod)).collect();
        for step in normal_form(f).steps().into_iter().rev() {
            match step {
                Generator::Face { n, i } => {
                    current.iter_mut().for_each(|x| *x = self.d(n, i, *x));
                }
                Generator::Degeneracy { n, j } => {
                    if n + 1 > self.n_max {
                        return Err(SsetError::OutOfTruncation { level: n + 1, n_max: self.n_max });
                    }
                    current.iter_mut().for_each(|x| *x = self.s(n, j, *x));
                }
            }
        }
        Ok(current)
    }

    /// Whether `x ∈ X_n` lies in the image of some degeneracy.
    pub fn degenerate_flags(&self, n: usize) -> Vec<bool> {
        let mut flags = vec![false; self.size(n)];
        if n > 0 {
            for s in &self.degens[n - 1] {
                for &y in s {
                    flags[y] = true;
                }
            }
        }
        flags
    }

    pub fn nondegenerate(&self, n: usize) -> Vec<usize> {
        self.degenerate_flags(n).iter().enumerate().filter(|(_, &d)| !d).map(|(x, _)| x).collect()
    }

    /// The edges `(k, k+1)` of an `n`-simplex, for `n ≥ 1`; the vertex for
    /// `n = 0`.
    pub fn spine(&self, n: usize) -> Result<Vec<Vec<usize>>, SsetError> {
        if n == 0 {
            return Ok((0..self.size(0)).map(|x| vec![x]).collect());
        }
        let maps: Vec<Vec<usize>> = (0..n).map(|k| self.eval(&MonotoneMap::shift(1, n, k))).collect::<Result<_, _>>()?;
        Ok((0..self.size(n)).map(|x| maps.iter().map(|m| m[x]).collect()).collect())
    }

    /// Standard simplex `Δ[k]` truncated at `n_max`: level `n` is the set of
    /// monotone maps `[n] → [k]`.
    pub fn standard_simplex(k: usize, n_max: usize) -> TruncSimplicialSet {
        super::nerve(&crate::cat::examples::linear_order(k + 1), n_max)
    }
}
