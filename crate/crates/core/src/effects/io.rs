use super::monad::{Elem, FinMonad};

/// Finite interaction trees: return a value, output a symbol, or read one of
/// `|I|` inputs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IOTree<A> {
    Return(A),
    Output(usize, Box<IOTree<A>>),
    Input(Vec<IOTree<A>>),
}

impl<A: Clone> IOTree<A> {
    /// Number of input/output nodes on the longest path.
    pub fn depth(&self) -> usize {
        match self {
            IOTree::Return(_) => 0,
            IOTree::Output(_, t) => 1 + t.depth(),
            IOTree::Input(ts) => 1 + ts.iter().map(IOTree::depth).max().unwrap_or(0),
        }
    }

    pub fn map<B>(&self, f: &dyn Fn(&A) -> B) -> IOTree<B> {
        match self {
            IOTree::Return(a) => IOTree::Return(f(a)),
            IOTree::Output(o, t) => IOTree::Output(*o, Box::new(t.map(f))),
            IOTree::Input(ts) => IOTree::Input(ts.iter().map(|t| t.map(f)).collect()),
        }
    }

    /// The output word and result of a tree without input nodes.
    pub fn output_word(&self) -> Option<(Vec<usize>, A)> {
        let mut word = Vec::new();
        let mut t = self;
        loop {
            match t {
                IOTree::Return(a) => return Some((word, a.clone())),
                IOTree::Output(o, next) => {
                    word.push(*o);
                    t = next;
                }
                IOTree::Input(_) => return None,
            }
        }
    }
}

/// Multiplication: replace each leaf by the tree it carries.
pub fn io_graft<A: Clone>(outer: &IOTree<IOTree<A>>) -> IOTree<A> {
    match outer {
        IOTree::Return(inner) => inner.clone(),
        IOTree::Output(o, t) => IOTree::Output(*o, Box::new(io_graft(t))),
        IOTree::Input(ts) => IOTree::Input(ts.iter().map(io_graft).collect()),
    }
}

/// Trees of depth `≤ depth` with leaves in `a`.
pub fn io_trees<A: Clone>(inputs: usize, outputs: usize, a: &[A], depth: usize) -> Vec<IOTree<A>> {
    let leaves: Vec<IOTree<A>> = a.iter().cloned().map(IOTree::Return).collect();
    let mut trees = leaves.clone();
    for _ in 0..depth {
        let mut next = leaves.clone();
        for o in 0..outputs {
            next.extend(trees.iter().map(|t| IOTree::Output(o, Box::new(t.clone()))));
        }
        let total = trees.len().checked_pow(inputs as u32).expect("tree count overflow");
        for mut code in 0..total {
            let children = (0..inputs)
                .map(|_| {
                    let t = trees[code % trees.len()].clone();
                    code /= trees.len();
                    t
                })
                .collect();
            next.push(IOTree::Input(children));
        }
        trees = next;
    }
    trees
}

/// Interactive input/output with `|I| = inputs`, `|O| = outputs`; `elements`
/// enumerates trees up to `depth`, while `mu` grafts without a bound.
#[derive(Debug, Clone, Copy)]
pub struct IOMonad {
    pub inputs: usize,
    pub outputs: usize,
    pub depth: usize,
}

impl FinMonad for IOMonad {
    type T<A: Elem> = IOTree<A>;

    fn name(&self) -> String {
        format!("io(|I|={},|O|={},depth≤{})", self.inputs, self.outputs, self.depth)
    }

    fn elements<A: Elem>(&self, a: &[A], cap: usize) -> Option<Vec<IOTree<A>>> {
        let mut count = a.len() as u128;
        for _ in 0..self.depth {
            count = (a.len() as u128)
                .checked_add(count.checked_mul(self.outputs as u128)?)?
                .checked_add(count.checked_pow(self.inputs as u32)?)?;
            if count > cap as u128 {
                return None;
            }
        }
        (count <= cap as u128).then(|| io_trees(self.inputs, self.outputs, a, self.depth))
    }

    fn unit<A: Elem>(&self, a: A) -> IOTree<A> {
        IOTree::Return(a)
    }

    fn fmap<A: Elem, B: Elem>(&self, t: &IOTree<A>, f: &dyn Fn(&A) -> B) -> IOTree<B> {
        t.map(f)
    }

    fn mu<A: Elem>(&self, tt: IOTree<IOTree<A>>) -> IOTree<A> {
        io_graft(&tt)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::effects::monad::check_monad_laws;

    #[test]
    fn depth_one_count() {
        assert_eq!(io_trees(1, 1, &[0], 1).len(), 3);
        assert_eq!(io_trees(2, 1, &[0], 1).len(), 3);
        // depth ≤ 1 gives 1 + 2 + 1 = 4 trees, so depth ≤ 2 gives 1 + 2·4 + 4²
        assert_eq!(io_trees(2, 2, &[0], 2).len(), 1 + 2 * 4 + 16);
    }

    #[test]
    fn graft_unit_and_words() {
        let inner = IOTree::Input(vec![IOTree::Return(1), IOTree::Output(0, Box::new(IOTree::Return(2)))]);
        assert_eq!(io_graft(&IOTree::Return(inner.clone())), inner);
        fn out<A>(os: &[usize], a: A) -> IOTree<A> {
            os.iter().rev().fold(IOTree::Return(a), |t, &o| IOTree::Output(o, Box::new(t)))
        }
        let outer = out(&[1, 0], out(&[2], 7));
        let flat = io_graft(&outer);
        assert_eq!(flat.output_word(), Some((vec![1, 0, 2], 7)));
        assert!(flat.depth() <= outer.depth() + 1);
        assert_eq!(inner.output_word(), None);
    }

    #[test]
    fn laws() {
        for (i, o) in [(1, 1), (2, 1), (1, 2)] {
            let m = IOMonad { inputs: i, outputs: o, depth: 1 };
            assert!(check_monad_laws(&m, &[0usize], 1 << 16).unwrap());
        }
        let m = IOMonad { inputs: 2, outputs: 2, depth: 2 };
        assert!(!check_monad_laws(&m, &[0usize, 1], 1 << 12).unwrap());
    }
}
