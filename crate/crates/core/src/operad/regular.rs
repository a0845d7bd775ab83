use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

/// Terms of an equational presentation: variables are identifiers starting
/// with a lowercase letter, everything else is an operation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum EqTerm {
    Var(String),
    App(String, Vec<EqTerm>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EquationTree {
    pub left: EqTerm,
    pub right: EqTerm,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquationError {
    #[error("unexpected {found:?} at byte {at}")]
    Unexpected { at: usize, found: String },
    #[error("unexpected end of input")]
    End,
    #[error("expected exactly one '='")]
    NotAnEquation,
}

impl EqTerm {
    /// Variables in left-to-right order, with repetitions.
    pub fn variables(&self) -> Vec<&str> {
        match self {
            EqTerm::Var(v) => vec![v.as_str()],
            EqTerm::App(_, args) => args.iter().flat_map(EqTerm::variables).collect(),
        }
    }
}

impl fmt::Display for EqTerm {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EqTerm::Var(v) => write!(out, "{v}"),
            EqTerm::App(f, args) if args.is_empty() => write!(out, "{f}"),
            EqTerm::App(f, args) => {
                write!(out, "{f}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(out, ", ")?;
                    }
                    write!(out, "{a}")?;
                }
                write!(out, ")")
            }
        }
    }
}

/// Both sides list the same variables, in the same order, each once.
pub fn strongly_regular(eq: &EquationTree) -> bool {
    let left = eq.left.variables();
    let mut seen = HashSet::new();
    left == eq.right.variables() && left.iter().all(|v| seen.insert(*v))
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(String),
    Sym(&'static str),
}

const SYMBOLS: [&str; 13] = ["⁻¹", "^{-1}", "^-1", "·", "*", "+", "^", "(", ")", "{", "}", ",", "="];

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, EquationError> {
    let mut out = Vec::new();
    let mut at = 0;
    while at < src.len() {
        let rest = &src[at..];
        let c = rest.chars().next().expect("nonempty");
        if c.is_whitespace() {
            at += c.len_utf8();
        } else if let Some(sym) = SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
            out.push((at, Tok::Sym(sym)));
            at += sym.len();
        } else if c.is_alphabetic() {
            let len = rest.find(|ch: char| !ch.is_alphanumeric() && ch != '_').unwrap_or(rest.len());
            out.push((at, Tok::Ident(rest[..len].to_string())));
            at += len;
        } else if c.is_ascii_digit() {
            let len = rest.find(|ch: char| !ch.is_ascii_digit()).unwrap_or(rest.len());
            out.push((at, Tok::Num(rest[..len].to_string())));
            at += len;
        } else {
            return Err(EquationError::Unexpected { at, found: c.to_string() });
        }
    }
    Ok(out)
}

struct Pratt {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Pratt {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn next(&mut self) -> Result<(usize, Tok), EquationError> {
        let t = self.toks.get(self.pos).cloned().ok_or(EquationError::End)?;
        self.pos += 1;
        Ok(t)
    }

    fn expect(&mut self, sym: &str) -> Result<(), EquationError> {
        match self.next()? {
            (_, Tok::Sym(s)) if s == sym => Ok(()),
            (at, t) => Err(EquationError::Unexpected { at, found: format!("{t:?}") }),
        }
    }

    /// Binding powers: `+` < `·`/`*` (left associative) < `^` (right
    /// associative) < postfix inverse.
    fn expr(&mut self, min: u8) -> Result<EqTerm, EquationError> {
        let mut lhs = self.atom()?;
        loop {
            let (op, lbp, rbp) = match self.peek() {
                Some(Tok::Sym("+")) => ("+", 1, 2),
                Some(Tok::Sym("·" | "*")) => ("·", 3, 4),
                Some(Tok::Sym("^")) => ("^", 6, 5),
                Some(Tok::Sym("⁻¹" | "^{-1}" | "^-1")) => {
                    self.pos += 1;
                    lhs = EqTerm::App("inv".into(), vec![lhs]);
                    continue;
                }
                _ => return Ok(lhs),
            };
            if lbp < min {
                return Ok(lhs);
            }
            self.pos += 1;
            let rhs = self.expr(rbp)?;
            lhs = EqTerm::App(op.into(), vec![lhs, rhs]);
        }
    }

    fn atom(&mut self) -> Result<EqTerm, EquationError> {
        match self.next()? {
            (_, Tok::Sym("(")) => {
                let t = self.expr(0)?;
                self.expect(")")?;
                Ok(t)
            }
            (_, Tok::Sym("{")) => {
                let t = self.expr(0)?;
                self.expect("}")?;
                Ok(t)
            }
            (_, Tok::Num(n)) => Ok(EqTerm::App(n, Vec::new())),
            (_, Tok::Ident(name)) => {
                if self.peek() == Some(&Tok::Sym("(")) {
                    self.pos += 1;
                    let mut args = vec![self.expr(0)?];
                    while self.peek() == Some(&Tok::Sym(",")) {
                        self.pos += 1;
                        args.push(self.expr(0)?);
                    }
                    self.expect(")")?;
                    Ok(EqTerm::App(name, args))
                } else if name.starts_with(|c: char| c.is_lowercase()) {
                    Ok(EqTerm::Var(name))
                } else {
                    Ok(EqTerm::App(name, Vec::new()))
                }
            }
            (at, t) => Err(EquationError::Unexpected { at, found: format!("{t:?}") }),
        }
    }
}

/// Parse `lhs = rhs` with infix `+`, `·` (or `*`), `^`, postfix `⁻¹`
/// (or `^{-1}`, `^-1`), braces as parentheses, numerals and uppercase names
/// as constants, and `f(t, …)` applications.
pub fn parse_equation(src: &str) -> Result<EquationTree, EquationError> {
    let toks = lex(src)?;
    if toks.iter().filter(|(_, t)| *t == Tok::Sym("=")).count() != 1 {
        return Err(EquationError::NotAnEquation);
    }
    let mut p = Pratt { toks, pos: 0 };
    let left = p.expr(0)?;
    p.expect("=")?;
    let right = p.expr(0)?;
    if let Some((at, t)) = p.toks.get(p.pos) {
        return Err(EquationError::Unexpected { at: *at, found: format!("{t:?}") });
    }
    Ok(EquationTree { left, right })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn regular(src: &str) -> bool {
        strongly_regular(&parse_equation(src).unwrap())
    }

    #[test]
    fn listed_relations() {
        assert!(regular("x·(y·z) = (x·y)·z"));
        assert!(regular("x·1 = x"));
        assert!(regular("(x^y)^z = x^{y·z}"));
        assert!(!regular("x·0 = 0"));
        assert!(!regular("x·y = y·x"));
        assert!(!regular("x·(y+z) = x·y + x·z"));
        assert!(!regular("x⁻¹·x = 1"));
        assert!(!regular("x^{-1} * x = 1"));
    }

    #[test]
    fn parse_shapes() {
        let eq = parse_equation("x + y·z^w^v = f(x, y)").unwrap();
        assert_eq!(eq.left.to_string(), "+(x, ·(y, ^(z, ^(w, v))))");
        assert_eq!(eq.right.variables(), vec!["x", "y"]);
        assert_eq!(parse_equation("x·y·z = e").unwrap().left.to_string(), "·(·(x, y), z)");
        assert_eq!(parse_equation("x = y = z"), Err(EquationError::NotAnEquation));
        assert_eq!(parse_equation("x·(y = z"), Err(EquationError::Unexpected { at: 6, found: "Sym(\"=\")".into() }));
        assert!(matches!(parse_equation("x # y = z"), Err(EquationError::Unexpected { .. })));
    }

    #[test]
    fn repetition_alone_breaks_regularity() {
        assert!(!regular("x·x = x·x"));
        assert!(regular("f(x, y) = g(x, E, y)"));
    }
}
