use std::sync::Arc;

use super::coend::{coend_set, MixedVarianceFunctor};
use crate::cat::{enumerate_nat_transforms, naturality_violations, ColimitResult, FinCategory, ObjId, SetFunctor};
use crate::freecat::{delta0, paths_of_length, Edge, Graph};

/// A functor from an index category `A` into presheaves on a site:
/// `objects[a]` is a set-valued functor on the site (already the opposite
/// where relevant) and `arrows[f][s]` is the component at site object `s`.
#[derive(Debug, Clone)]
pub struct PresheafDiagram {
    pub index: Arc<FinCategory>,
    pub site: Arc<FinCategory>,
    pub objects: Vec<SetFunctor>,
    pub arrows: Vec<Vec<Vec<usize>>>,
}

impl PresheafDiagram {
    /// Functoriality in `A` and naturality of every arrow.
    pub fn validate(&self) -> Result<(), String> {
        let a = &*self.index;
        for (k, p) in self.objects.iter().enumerate() {
            if let Some(v) = p.check_functoriality().first() {
                return Err(format!("object {}: {v}", a.object_name(k)));
            }
        }
        for f in 0..a.num_arrows() {
            let (s, t) = (&self.objects[a.src(f)], &self.objects[a.tgt(f)]);
            if let Some(v) = naturality_violations(s, t, &self.arrows[f]).first() {
                return Err(format!("arrow {}: square at {} fails", a.arrow_name(f), v.arrow));
            }
        }
        for (f, g, h) in a.sorted_composites() {
            for s in 0..self.site.num_objects() {
                let ok =
                    (0..self.objects[a.src(f)].size(s)).all(|x| self.arrows[g][s][self.arrows[f][s][x]] == self.arrows[h][s][x]);
                if !ok {
                    return Err(format!("composite {};{} not preserved", a.arrow_name(f), a.arrow_name(g)));
                }
            }
        }
        Ok(())
    }

    /// `D(-)(s)` as a set-valued functor on the index category.
    pub fn at(&self, s: ObjId) -> SetFunctor {
        SetFunctor {
            base: self.index.clone(),
            carriers: self.objects.iter().map(|p| p.carriers[s].clone()).collect(),
            action: self.arrows.iter().map(|f| f[s].clone()).collect(),
        }
    }
}

/// `W ⋆ D` computed site-object by site-object.
#[derive(Debug, Clone)]
pub struct WeightedColimit {
    pub presheaf: SetFunctor,
    pub levels: Vec<ColimitResult>,
}

impl WeightedColimit {
    /// Representatives `(a, w, x)` at site object `s`.
    pub fn representatives(&self, d: &PresheafDiagram, s: ObjId) -> Vec<(ObjId, usize, usize)> {
        self.levels[s]
            .apex
            .iter()
            .map(|&(a, ix)| {
                let n = d.objects[a].size(s);
                (a, ix / n, ix % n)
            })
            .collect()
    }
}

/// The colimit of `d` weighted by the presheaf `weight` on the index:
/// at each site object `s`, `∫^a W(a) × D(a)(s)`.
pub fn weighted_colimit(weight: &SetFunctor, d: &PresheafDiagram) -> WeightedColimit {
    let site = &*d.site;
    let levels: Vec<ColimitResult> =
        (0..site.num_objects()).map(|s| coend_set(&MixedVarianceFunctor::product(weight, &d.at(s)))).collect();
    let mut out =
        WeightedColimit { presheaf: SetFunctor { base: d.site.clone(), carriers: Vec::new(), action: Vec::new() }, levels };
    out.presheaf.carriers = (0..site.num_objects())
        .map(|s| {
            out.representatives(d, s)
                .into_iter()
                .map(|(a, w, x)| format!("{}⊗{}", weight.carriers[a][w], d.objects[a].carriers[s][x]))
                .collect()
        })
        .collect();
    out.presheaf.action = (0..site.num_arrows())
        .map(|sigma| {
            let (s, t) = (site.src(sigma), site.tgt(sigma));
            out.representatives(d, s)
                .into_iter()
                .map(|(a, w, x)| {
                    let y = d.objects[a].apply(sigma, x);
                    out.levels[t].class_of(a, w * d.objects[a].size(t) + y)
                })
                .collect()
        })
        .collect();
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DensityVerdict {
    Isomorphism,
    /// The comparison map is not bijective at the named site object within
    /// the given arities; larger arities might still succeed.
    Undetermined {
        site_object: String,
        reason: String,
    },
}

#[derive(Debug, Clone)]
pub struct DensityReport {
    pub probe: String,
    pub verdict: DensityVerdict,
    pub colimit_sizes: Vec<usize>,
}

/// The nerve `a ↦ Nat(i a, P)` of a probe, acting by precomposition.
pub fn nerve_of_probe(i: &PresheafDiagram, probe: &SetFunctor) -> (SetFunctor, Vec<Vec<Vec<Vec<usize>>>>) {
    let a = &*i.index;
    let homs: Vec<Vec<Vec<Vec<usize>>>> = i.objects.iter().map(|ia| enumerate_nat_transforms(ia, probe)).collect();
    let action = (0..a.num_arrows())
        .map(|f| {
            let (s, t) = (a.src(f), a.tgt(f));
            homs[t]
                .iter()
                .map(|alpha| {
                    let pre: Vec<Vec<usize>> =
                        (0..i.site.num_objects()).map(|o| i.arrows[f][o].iter().map(|&x| alpha[o][x]).collect()).collect();
                    homs[s].iter().position(|b| *b == pre).expect("precomposite is natural")
                })
                .collect()
        })
        .collect();
    let carriers = homs.iter().map(|h| (0..h.len()).map(|k| format!("α{k}")).collect()).collect();
    (SetFunctor { base: Arc::new(a.opposite()), carriers, action }, homs)
}

/// Is `probe` the colimit of the arities weighted by its nerve? Positive
/// answers are certified by a bijective comparison map.
pub fn density_check(i: &PresheafDiagram, probe: &SetFunctor, name: &str) -> DensityReport {
    let (weight, homs) = nerve_of_probe(i, probe);
    let colim = weighted_colimit(&weight, i);
    let site = &*i.site;
    let colimit_sizes = colim.levels.iter().map(ColimitResult::size).collect();
    for s in 0..site.num_objects() {
        let mut hit = vec![false; probe.size(s)];
        let mut ok = true;
        for (a, w, x) in colim.representatives(i, s) {
            let y = homs[a][w][s][x];
            ok &= !hit[y];
            hit[y] = true;
        }
        if !ok || hit.iter().any(|&h| !h) {
            let reason = if ok { "comparison not surjective" } else { "comparison not injective" };
            return DensityReport {
                probe: name.into(),
                verdict: DensityVerdict::Undetermined { site_object: site.object_name(s).into(), reason: reason.into() },
                colimit_sizes,
            };
        }
    }
    DensityReport { probe: name.into(), verdict: DensityVerdict::Isomorphism, colimit_sizes }
}

/// `𝔾^op`: objects `V`, `E`; arrows `s, t: E → V`. Graphs are set-valued
/// functors on it.
pub fn graph_site() -> FinCategory {
    FinCategory::builder()
        .object("V")
        .object("E")
        .arrow("1V", "V", "V")
        .arrow("1E", "E", "E")
        .arrow("s", "E", "V")
        .arrow("t", "E", "V")
        .identity("V", "1V")
        .identity("E", "1E")
        .compose("1V", "1V", "1V")
        .compose("1E", "1E", "1E")
        .compose("1E", "s", "s")
        .compose("1E", "t", "t")
        .compose("s", "1V", "s")
        .compose("t", "1V", "t")
        .build()
        .expect("well-formed")
}

pub fn graph_to_presheaf(g: &Graph, site: &Arc<FinCategory>) -> SetFunctor {
    let mut action = vec![Vec::new(); 4];
    action[site.arrow_id("1V").unwrap()] = (0..g.num_vertices()).collect();
    action[site.arrow_id("1E").unwrap()] = (0..g.num_edges()).collect();
    action[site.arrow_id("s").unwrap()] = g.edges.iter().map(|e| e.src).collect();
    action[site.arrow_id("t").unwrap()] = g.edges.iter().map(|e| e.tgt).collect();
    SetFunctor {
        base: site.clone(),
        carriers: vec![g.vertices.clone(), g.edges.iter().map(|e| e.name.clone()).collect()],
        action,
    }
}

pub fn presheaf_to_graph(p: &SetFunctor) -> Graph {
    let site = &*p.base;
    let (v, e) = (site.object_id("V").unwrap(), site.object_id("E").unwrap());
    let (s, t) = (site.arrow_id("s").unwrap(), site.arrow_id("t").unwrap());
    Graph {
        vertices: p.carriers[v].clone(),
        edges: (0..p.size(e)).map(|x| Edge { name: p.carriers[e][x].clone(), src: p.apply(s, x), tgt: p.apply(t, x) }).collect(),
    }
}

/// The arities `i₀: Δ₀ → Graph` truncated at `n_max`.
pub fn delta0_arities(n_max: usize) -> PresheafDiagram {
    let site = Arc::new(graph_site());
    let index = Arc::new(delta0(n_max));
    let objects = (0..=n_max).map(|n| graph_to_presheaf(&Graph::linear_quiver(n), &site)).collect();
    let (v, e) = (site.object_id("V").unwrap(), site.object_id("E").unwrap());
    let arrows = index
        .arrows()
        .iter()
        .map(|a| {
            let (m, k) = (a.src, a.name.rsplit_once('+').unwrap().1.parse::<usize>().unwrap());
            let mut comps = vec![Vec::new(); 2];
            comps[v] = (0..=m).map(|x| x + k).collect();
            comps[e] = (0..m).map(|x| x + k).collect();
            comps
        })
        .collect();
    PresheafDiagram { index, site, objects, arrows }
}

/// A graph rebuilt as the colimit of its paths of length `≤ n_max`
/// weighted by the graph's own nerve.
pub fn reconstruct_graph(g: &Graph, n_max: usize) -> Graph {
    let i = delta0_arities(n_max);
    let probe = graph_to_presheaf(g, &i.site);
    let (weight, _) = nerve_of_probe(&i, &probe);
    presheaf_to_graph(&weighted_colimit(&weight, &i).presheaf)
}

/// `Graph(i₀[n], G)` counts as a quick cross-check of [`nerve_of_probe`].
pub fn path_counts(g: &Graph, n_max: usize) -> Vec<usize> {
    (0..=n_max).map(|n| paths_of_length(g, n).len()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::{colimit_set_functor, examples::*};

    fn worked_graph() -> Graph {
        Graph::from_indices(&["0", "1", "2", "3", "4", "5"], &[("a", 0, 4), ("b", 4, 5), ("c", 0, 1), ("d", 1, 2), ("e", 2, 3)])
    }

    #[test]
    fn arities_form_a_diagram() {
        let i = delta0_arities(3);
        assert!(i.validate().is_ok());
    }

    #[test]
    fn nerve_of_probe_counts_paths() {
        let i = delta0_arities(3);
        let g = worked_graph();
        let (w, _) = nerve_of_probe(&i, &graph_to_presheaf(&g, &i.site));
        assert!(w.check_functoriality().is_empty());
        let sizes: Vec<usize> = (0..4).map(|n| w.size(n)).collect();
        assert_eq!(sizes, path_counts(&g, 3));
    }

    #[test]
    fn constant_weight_is_the_ordinary_colimit() {
        let i = delta0_arities(2);
        let one = SetFunctor::constant(Arc::new(i.index.opposite()), 1);
        let wc = weighted_colimit(&one, &i);
        for s in 0..2 {
            assert_eq!(wc.levels[s].size(), colimit_set_functor(&i.at(s)).size());
        }
    }

    #[test]
    fn weight_two_doubles_a_discrete_contribution() {
        let site = Arc::new(graph_site());
        let index = Arc::new(discrete(2));
        let objects = [1, 2].map(|n| graph_to_presheaf(&Graph::linear_quiver(n), &site)).to_vec();
        let d = PresheafDiagram {
            index: index.clone(),
            site,
            objects,
            arrows: vec![vec![vec![0, 1], vec![0]], vec![vec![0, 1, 2], vec![0, 1]]],
        };
        assert!(d.validate().is_ok());
        let w = SetFunctor::with_sizes(Arc::new(index.opposite()), &[2, 1], vec![vec![0, 1], vec![0]]);
        let wc = weighted_colimit(&w, &d);
        // two copies of [1] plus one of [2]
        assert_eq!(wc.levels[0].size(), 2 * 2 + 3);
        assert_eq!(wc.levels[1].size(), 2 + 2);
    }

    #[test]
    fn density_for_graphs() {
        let i = delta0_arities(3);
        let probes = [
            ("[2]", Graph::linear_quiver(2)),
            ("worked", worked_graph()),
            ("isolated", Graph::from_indices(&["x", "y"], &[("f", 0, 0)])),
        ];
        for (name, g) in probes {
            let r = density_check(&i, &graph_to_presheaf(&g, &i.site), name);
            assert_eq!(r.verdict, DensityVerdict::Isomorphism, "{name}");
        }
    }

    #[test]
    fn reconstruction_of_a_four_vertex_graph() {
        let g = Graph::from_indices(&["p", "q", "r", "s"], &[("x", 0, 1), ("y", 1, 2), ("z", 1, 3), ("w", 3, 3)]);
        let back = reconstruct_graph(&g, 2);
        assert_eq!(back.num_vertices(), 4);
        assert_eq!(back.num_edges(), 4);
        let iso = crate::freecat::find_graph_isomorphism(&g, &back).expect("isomorphic");
        assert!(iso.is_valid(&g, &back));
    }
}
