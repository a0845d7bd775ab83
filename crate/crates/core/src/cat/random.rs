use std::collections::HashMap;

use rand::Rng;

use super::category::{ArrowData, FinCategory};

/// A random finite category realized concretely: objects are small finite
/// sets, arrows are the functions generated by a few random generators under
/// composition. Retries until the arrow count fits.
pub fn random_concrete_category<R: Rng>(rng: &mut R, max_objects: usize, max_arrows: usize) -> FinCategory {
    assert!(max_objects >= 1 && max_arrows >= max_objects);
    loop {
        let k = rng.gen_range(1..=max_objects);
        let sizes: Vec<usize> = (0..k).map(|_| rng.gen_range(1..=3)).collect();
        let generators = rng.gen_range(0..=4);
        let mut gens = Vec::new();
        for _ in 0..generators {
            let s = rng.gen_range(0..k);
            let t = rng.gen_range(0..k);
            let table: Vec<usize> = (0..sizes[s]).map(|_| rng.gen_range(0..sizes[t])).collect();
            gens.push((s, t, table));
        }
        if let Some(c) = close_under_composition(&sizes, &gens, max_arrows) {
            return c;
        }
    }
}

type Concrete = (usize, usize, Vec<usize>);

/// Subcategory of finite sets generated by the given functions, or `None`
/// when it has more than `max_arrows` arrows.
pub fn close_under_composition(sizes: &[usize], gens: &[Concrete], max_arrows: usize) -> Option<FinCategory> {
    let mut arrows: Vec<Concrete> = (0..sizes.len()).map(|o| (o, o, (0..sizes[o]).collect())).collect();
    let mut index: HashMap<Concrete, usize> = arrows.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
    for g in gens {
        if !index.contains_key(g) {
            index.insert(g.clone(), arrows.len());
            arrows.push(g.clone());
        }
    }
    let mut changed = true;
    while changed {
        changed = false;
        let n = arrows.len();
        for f in 0..n {
            for g in 0..n {
                if arrows[f].1 != arrows[g].0 {
                    continue;
                }
                let table: Vec<usize> = arrows[f].2.iter().map(|&x| arrows[g].2[x]).collect();
                let h = (arrows[f].0, arrows[g].1, table);
                if !index.contains_key(&h) {
                    index.insert(h.clone(), arrows.len());
                    arrows.push(h);
                    changed = true;
                    if arrows.len() > max_arrows {
                        return None;
                    }
                }
            }
        }
    }
    let objects = (0..sizes.len()).map(|o| format!("X{o}")).collect();
    let data = arrows
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let name = if i < sizes.len() { format!("id{i}") } else { format!("f{}", i - sizes.len()) };
            ArrowData { name, src: a.0, tgt: a.1 }
        })
        .collect();
    let mut comp = HashMap::new();
    for f in 0..arrows.len() {
        for g in 0..arrows.len() {
            if arrows[f].1 == arrows[g].0 {
                let table: Vec<usize> = arrows[f].2.iter().map(|&x| arrows[g].2[x]).collect();
                comp.insert((f, g), index[&(arrows[f].0, arrows[g].1, table)]);
            }
        }
    }
    Some(FinCategory::from_parts(objects, data, (0..sizes.len()).collect(), comp))
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    #[test]
    fn generated_categories_are_valid_and_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let c = random_concrete_category(&mut rng, 4, 10);
            assert!(c.num_objects() <= 4 && c.num_arrows() <= 10);
            assert!(c.validate().is_empty(), "{:?}", c.validate());
        }
    }
}
