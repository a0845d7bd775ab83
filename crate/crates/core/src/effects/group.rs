use std::fmt;

use thiserror::Error;

use super::monad::{Elem, FinMonad};

/// A word in generators and their formal inverses; `(x, true)` is `x⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupWord<A> {
    pub letters: Vec<(A, bool)>,
}

impl<A> Default for GroupWord<A> {
    fn default() -> Self {
        GroupWord { letters: Vec::new() }
    }
}

impl<A: Clone + Eq> GroupWord<A> {
    pub fn new(letters: Vec<(A, bool)>) -> Self {
        GroupWord { letters }
    }

    pub fn generator(a: A) -> Self {
        GroupWord { letters: vec![(a, false)] }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Free reduction, cancelling adjacent `x x⁻¹` and `x⁻¹ x`.
    pub fn reduce(&self) -> Self {
        let mut out: Vec<(A, bool)> = Vec::with_capacity(self.letters.len());
        for (a, inv) in &self.letters {
            match out.last() {
                Some((b, binv)) if b == a && binv != inv => {
                    out.pop();
                }
                _ => out.push((a.clone(), *inv)),
            }
        }
        GroupWord { letters: out }
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| w[0].0 != w[1].0 || w[0].1 == w[1].1)
    }

    pub fn inverse(&self) -> Self {
        GroupWord { letters: self.letters.iter().rev().map(|(a, inv)| (a.clone(), !inv)).collect() }
    }

    pub fn map<B: Clone + Eq>(&self, f: &dyn Fn(&A) -> B) -> GroupWord<B> {
        GroupWord { letters: self.letters.iter().map(|(a, inv)| (f(a), *inv)).collect() }.reduce()
    }
}

impl<A: fmt::Display> fmt::Display for GroupWord<A> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, inv) in &self.letters {
            write!(out, "[{a}]{}", if *inv { "⁻¹" } else { "" })?;
        }
        Ok(())
    }
}

/// Drop the outer brackets, inverting the words under `⁻¹`, and reduce.
pub fn free_group_mu<A: Clone + Eq>(w: &GroupWord<GroupWord<A>>) -> GroupWord<A> {
    let mut letters = Vec::new();
    for (inner, inv) in &w.letters {
        if *inv {
            letters.extend(inner.inverse().letters);
        } else {
            letters.extend(inner.letters.iter().cloned());
        }
    }
    GroupWord { letters }.reduce()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupParseError {
    #[error("unbalanced bracket at byte {0}")]
    BracketMismatch(usize),
    #[error("unexpected input at byte {0}")]
    Unexpected(usize),
}

struct WordParser<'a> {
    src: &'a str,
    at: usize,
}

impl WordParser<'_> {
    fn rest(&self) -> &str {
        &self.src[self.at..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.at = self.src.len() - trimmed.len();
    }

    fn inverse_mark(&mut self) -> bool {
        self.skip_ws();
        for mark in ["⁻¹", "^-1"] {
            if self.rest().starts_with(mark) {
                self.at += mark.len();
                return true;
            }
        }
        false
    }

    /// A sequence of bracketed items, each a word of the level below; level 0
    /// items are single alphanumeric letters.
    fn word(&mut self, level: usize) -> Result<Nested, GroupParseError> {
        let mut items = Vec::new();
        loop {
            self.skip_ws();
            if !self.rest().starts_with('[') {
                return Ok(Nested::Word(items));
            }
            let open = self.at;
            self.at += 1;
            let item = if level == 0 {
                self.skip_ws();
                let c = self.rest().chars().next().filter(|c| c.is_alphanumeric()).ok_or(GroupParseError::Unexpected(self.at))?;
                self.at += c.len_utf8();
                Nested::Letter(c)
            } else {
                self.word(level - 1)?
            };
            self.skip_ws();
            if !self.rest().starts_with(']') {
                return Err(if self.rest().is_empty() {
                    GroupParseError::BracketMismatch(open)
                } else {
                    GroupParseError::Unexpected(self.at)
                });
            }
            self.at += 1;
            let inv = self.inverse_mark();
            items.push((item, inv));
        }
    }

    fn finish(&mut self) -> Result<(), GroupParseError> {
        self.skip_ws();
        match self.rest().chars().next() {
            None => Ok(()),
            Some(']') => Err(GroupParseError::BracketMismatch(self.at)),
            Some(_) => Err(GroupParseError::Unexpected(self.at)),
        }
    }
}

enum Nested {
    Letter(char),
    Word(Vec<(Nested, bool)>),
}

fn flat(n: Nested) -> GroupWord<char> {
    let Nested::Word(items) = n else { unreachable!() };
    GroupWord::new(items.into_iter().map(|(l, inv)| (if let Nested::Letter(c) = l { c } else { unreachable!() }, inv)).collect())
}

/// Parse `[a][b]⁻¹…` (`^-1` is accepted for `⁻¹`).
pub fn parse_group_word(src: &str) -> Result<GroupWord<char>, GroupParseError> {
    let mut p = WordParser { src, at: 0 };
    let w = p.word(0)?;
    p.finish()?;
    Ok(flat(w))
}

/// Parse a word of bracketed words, `[[a][b]⁻¹][[c]]⁻¹…`.
pub fn parse_group_word2(src: &str) -> Result<GroupWord<GroupWord<char>>, GroupParseError> {
    let mut p = WordParser { src, at: 0 };
    let Nested::Word(items) = p.word(1)? else { unreachable!() };
    p.finish()?;
    Ok(GroupWord::new(items.into_iter().map(|(w, inv)| (flat(w), inv)).collect()))
}

/// The free group monad, enumerating reduced words of length `≤ max_len`.
#[derive(Debug, Clone, Copy)]
pub struct FreeGroup {
    pub max_len: usize,
}

impl FinMonad for FreeGroup {
    type T<A: Elem> = GroupWord<A>;

    fn name(&self) -> String {
        format!("free group(len≤{})", self.max_len)
    }

    fn elements<A: Elem>(&self, a: &[A], cap: usize) -> Option<Vec<GroupWord<A>>> {
        let mut out = vec![GroupWord::default()];
        let mut frontier = out.clone();
        for _ in 0..self.max_len {
            let mut next = Vec::new();
            for w in &frontier {
                for x in a {
                    for inv in [false, true] {
                        if w.letters.last().is_some_and(|(y, yinv)| y == x && *yinv != inv) {
                            continue;
                        }
                        let mut letters = w.letters.clone();
                        letters.push((x.clone(), inv));
                        next.push(GroupWord { letters });
                    }
                }
            }
            out.extend(next.iter().cloned());
            if out.len() > cap {
                return None;
            }
            frontier = next;
        }
        Some(out)
    }

    fn unit<A: Elem>(&self, a: A) -> GroupWord<A> {
        GroupWord::generator(a)
    }

    fn fmap<A: Elem, B: Elem>(&self, t: &GroupWord<A>, f: &dyn Fn(&A) -> B) -> GroupWord<B> {
        t.map(f)
    }

    fn mu<A: Elem>(&self, tt: GroupWord<GroupWord<A>>) -> GroupWord<A> {
        free_group_mu(&tt)
    }
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::effects::monad::check_monad_laws;

    #[test]
    fn flattening_example() {
        let w = parse_group_word2("[[a][b]⁻¹][[c][a]][[d]][[a][b]]⁻¹").unwrap();
        assert_eq!(free_group_mu(&w).to_string(), "[a][b]⁻¹[c][a][d][b]⁻¹[a]⁻¹");
        let ascii = parse_group_word2("[[a][b]^-1][[c][a]][[d]][[a][b]]^-1").unwrap();
        assert_eq!(ascii, w);
    }

    #[test]
    fn singletons_and_reduction() {
        let w = parse_group_word("[a][b]⁻¹[c]").unwrap();
        let singletons = GroupWord::new(w.letters.iter().map(|(c, inv)| (GroupWord::generator(*c), *inv)).collect());
        assert_eq!(free_group_mu(&singletons), w);
        assert!(parse_group_word("[a][a]⁻¹").unwrap().reduce().is_empty());
        assert!(!parse_group_word("[b][a]⁻¹[a]").unwrap().is_reduced());
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_group_word("[a][b"), Err(GroupParseError::BracketMismatch(3)));
        assert_eq!(parse_group_word("[a]]"), Err(GroupParseError::BracketMismatch(3)));
        assert!(matches!(parse_group_word2("[[a]"), Err(GroupParseError::BracketMismatch(_))));
        assert!(matches!(parse_group_word("[ab]"), Err(GroupParseError::Unexpected(_))));
        assert_eq!(parse_group_word2("[]").unwrap().letters, vec![(GroupWord::default(), false)]);
    }

    fn random_word<A: Clone + Eq>(rng: &mut ChaCha8Rng, gens: &[A]) -> GroupWord<A> {
        let len = rng.gen_range(0..=6);
        GroupWord::new((0..len).map(|_| (gens[rng.gen_range(0..gens.len())].clone(), rng.gen_bool(0.5))).collect())
    }

    #[test]
    fn laws_on_random_words() {
        let m = FreeGroup { max_len: 6 };
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let alphabet = ['a', 'b', 'c'];
        let inner: Vec<GroupWord<char>> = (0..8).map(|_| random_word(&mut rng, &alphabet).reduce()).collect();
        let middle: Vec<GroupWord<GroupWord<char>>> = (0..8).map(|_| random_word(&mut rng, &inner)).collect();
        for _ in 0..200 {
            let w = random_word(&mut rng, &alphabet).reduce();
            assert_eq!(m.mu(m.unit(w.clone())), w);
            assert_eq!(m.mu(m.fmap(&w, &|x: &char| m.unit(*x))), w);
            let www = random_word(&mut rng, &middle);
            assert_eq!(m.mu(m.mu(www.clone())), m.mu(m.fmap(&www, &|x: &GroupWord<GroupWord<char>>| m.mu(x.clone()))));
        }
        assert!(!check_monad_laws(&FreeGroup { max_len: 2 }, &['a'], 1 << 12).unwrap());
        assert_eq!(m.elements(&['a', 'b'], 1 << 20).unwrap().len(), 1 + 4 + 12 + 36 + 108 + 324 + 972);
    }
}
