use std::collections::HashMap;

use super::sset::TruncSimplicialSet;
use crate::cat::{ArrowId, FinCategory};

/// Composable `n`-tuples of arrows, in lexicographic order of arrow ids.
/// Empty for `n = 0`; the nerve uses the objects there.
pub fn composable_tuples(c: &FinCategory, n: usize) -> Vec<Vec<ArrowId>> {
    let mut level: Vec<Vec<ArrowId>> = (0..c.num_arrows()).map(|f| vec![f]).collect();
    if n == 0 {
        return Vec::new();
    }
    for _ in 1..n {
        let mut next = Vec::new();
        for t in &level {
            let end = c.tgt(*t.last().unwrap());
            for g in 0..c.num_arrows() {
                if c.src(g) == end {
                    let mut u = t.clone();
                    u.push(g);
                    next.push(u);
                }
            }
        }
        level = next;
    }
    level
}

/// Nerve of a finite category truncated at `n_max`: `X_0` is the objects,
/// `X_n` the composable `n`-tuples; faces compose or drop, degeneracies
/// insert identities.
pub fn nerve(c: &FinCategory, n_max: usize) -> TruncSimplicialSet {
    let tuples: Vec<Vec<Vec<ArrowId>>> = (0..=n_max).map(|n| composable_tuples(c, n)).collect();
    let index: Vec<HashMap<&[ArrowId], usize>> =
        tuples.iter().map(|lvl| lvl.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect()).collect();
    let mut levels = Vec::with_capacity(n_max + 1);
    levels.push(c.objects().to_vec());
    for lvl in tuples.iter().skip(1) {
        levels.push(lvl.iter().map(|t| t.iter().map(|&f| c.arrow_name(f)).collect::<Vec<_>>().join("|")).collect());
    }
    let mut faces = vec![Vec::new()];
    for n in 1..=n_max {
        let mut per_i = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let map = tuples[n]
                .iter()
                .map(|t| {
                    if n == 1 {
                        return if i == 0 { c.tgt(t[0]) } else { c.src(t[0]) };
                    }
                    let face: Vec<ArrowId> = if i == 0 {
                        t[1..].to_vec()
                    } else if i == n {
                        t[..n - 1].to_vec()
                    } else {
                        let mut u = t[..i - 1].to_vec();
                        u.push(c.compose(t[i - 1], t[i]).expect("valid category"));
                        u.extend_from_slice(&t[i + 1..]);
                        u
                    };
                    index[n - 1][face.as_slice()]
                })
                .collect();
            per_i.push(map);
        }
        faces.push(per_i);
    }
    let mut degens = Vec::with_capacity(n_max);
    for n in 0..n_max {
        let mut per_j = Vec::with_capacity(n + 1);
        for j in 0..=n {
            let map: Vec<usize> = if n == 0 {
                (0..c.num_objects()).map(|o| index[1][[c.identity(o)].as_slice()]).collect()
            } else {
                tuples[n]
                    .iter()
                    .map(|t| {
                        let vertex = if j == 0 { c.src(t[0]) } else { c.tgt(t[j - 1]) };
                        let mut u = t[..j].to_vec();
                        u.push(c.identity(vertex));
                        u.extend_from_slice(&t[j..]);
                        index[n + 1][u.as_slice()]
                    })
                    .collect()
            };
            per_j.push(map);
        }
        degens.push(per_j);
    }
    TruncSimplicialSet { n_max, levels, faces, degens }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::examples::*;
    use crate::simplicial::delta::{compose_monotone, enumerate_monotone, MonotoneMap};

    #[test]
    fn arrow_category_nerve_sizes() {
        let x = nerve(&arrow_category(), 2);
        assert_eq!((x.size(0), x.size(1), x.size(2)), (2, 3, 4));
        assert!(x.validate().is_empty());
    }

    #[test]
    fn discrete_nerve_is_degenerate_above_zero() {
        let x = nerve(&discrete(3), 3);
        for n in 1..=3 {
            assert!(x.nondegenerate(n).is_empty());
        }
    }

    /// The triangle `Δ[2]`: vertices A, B, C and edges f: A→B, g: B→C,
    /// h: A→C. The source map sends f↦A, g↦B, h↦A.
    #[test]
    fn triangle_source_map() {
        let c = FinCategory::builder()
            .object("A")
            .object("B")
            .object("C")
            .arrow("1A", "A", "A")
            .arrow("1B", "B", "B")
            .arrow("1C", "C", "C")
            .arrow("f", "A", "B")
            .arrow("g", "B", "C")
            .arrow("h", "A", "C")
            .identity("A", "1A")
            .identity("B", "1B")
            .identity("C", "1C")
            .compose("f", "g", "h")
            .compose("1A", "1A", "1A")
            .compose("1B", "1B", "1B")
            .compose("1C", "1C", "1C")
            .compose("1A", "f", "f")
            .compose("f", "1B", "f")
            .compose("1B", "g", "g")
            .compose("g", "1C", "g")
            .compose("1A", "h", "h")
            .compose("h", "1C", "h")
            .build()
            .unwrap();
        assert!(c.is_valid());
        let x = nerve(&c, 2);
        let source = x.eval(&MonotoneMap::new(0, 1, vec![0]).unwrap()).unwrap();
        let name = |lvl: usize, i: usize| x.levels[lvl][i].clone();
        let edge = |e: &str| x.levels[1].iter().position(|l| l == e).unwrap();
        assert_eq!(name(0, source[edge("f")]), "A");
        assert_eq!(name(0, source[edge("g")]), "B");
        assert_eq!(name(0, source[edge("h")]), "A");
    }

    /// Reindexing a nerve simplex along `f` is precomposition of the functor
    /// `[n] → C` with `f`; compare against generator evaluation.
    #[test]
    fn eval_matches_direct_reindexing() {
        let c = linear_order(3);
        let x = nerve(&c, 3);
        let vertices = |lvl: usize, e: usize| -> Vec<usize> {
            if lvl == 0 {
                return vec![e];
            }
            let spine = x.spine(lvl).unwrap();
            let mut vs = vec![x.d(1, 1, spine[e][0])];
            vs.extend(spine[e].iter().map(|&a| x.d(1, 0, a)));
            vs
        };
        for m in 0..=3 {
            for n in 0..=3 {
                for f in enumerate_monotone(m, n) {
                    let map = x.eval(&f).unwrap();
                    for y in 0..x.size(n) {
                        let vs = vertices(n, y);
                        let expected: Vec<usize> = f.values.iter().map(|&i| vs[i]).collect();
                        assert_eq!(vertices(m, map[y]), expected);
                    }
                }
            }
        }
        // functoriality along a pair of maps
        let f = MonotoneMap::new(1, 2, vec![0, 2]).unwrap();
        let g = MonotoneMap::new(2, 3, vec![1, 1, 3]).unwrap();
        let gf = compose_monotone(&f, &g).unwrap();
        let (xf, xg, xgf) = (x.eval(&f).unwrap(), x.eval(&g).unwrap(), x.eval(&gf).unwrap());
        for y in 0..x.size(3) {
            assert_eq!(xgf[y], xf[xg[y]]);
        }
    }
}
