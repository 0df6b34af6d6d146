//! Clock constraints: boolean combinations of `x < c`, `x = c`, `x > c`.
//!
//! An atom over a clock whose value is ⊥ is false. Negation is classical on
//! top of that, so `!(h.a = 1)` holds when `h.a` is ⊥.

use crate::clock::{int, Clock, Valuation};
use crate::error::{Error, Result};
use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CmpOp {
    Lt,
    Eq,
    Gt,
}

impl CmpOp {
    fn symbol(self) -> &'static str {
        match self {
            CmpOp::Lt => "<",
            CmpOp::Eq => "=",
            CmpOp::Gt => ">",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomicConstraint {
    pub clock: Clock,
    pub op: CmpOp,
    pub bound: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Guard {
    True,
    Atom(AtomicConstraint),
    Not(Box<Guard>),
    And(Box<Guard>, Box<Guard>),
    Or(Box<Guard>, Box<Guard>),
}

impl Guard {
    pub fn atom(clock: Clock, op: CmpOp, bound: u32) -> Guard {
        Guard::Atom(AtomicConstraint { clock, op, bound })
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(g: Guard) -> Guard {
        Guard::Not(Box::new(g))
    }

    pub fn and(a: Guard, b: Guard) -> Guard {
        Guard::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Guard, b: Guard) -> Guard {
        Guard::Or(Box::new(a), Box::new(b))
    }

    /// Conjunction of all guards; `true` when empty.
    pub fn all(guards: impl IntoIterator<Item = Guard>) -> Guard {
        guards.into_iter().reduce(Guard::and).unwrap_or(Guard::True)
    }

    pub fn parse(text: &str) -> Result<Guard> {
        Parser::new(text)?.parse_all()
    }

    pub fn clocks(&self) -> BTreeSet<Clock> {
        let mut out = BTreeSet::new();
        self.visit_atoms(&mut |a| {
            out.insert(a.clock.clone());
        });
        out
    }

    /// Largest constant appearing in an atom (0 for atom-free guards).
    pub fn max_constant(&self) -> u32 {
        let mut m = 0;
        self.visit_atoms(&mut |a| m = m.max(a.bound));
        m
    }

    fn visit_atoms(&self, f: &mut impl FnMut(&AtomicConstraint)) {
        match self {
            Guard::True => {}
            Guard::Atom(a) => f(a),
            Guard::Not(g) => g.visit_atoms(f),
            Guard::And(a, b) | Guard::Or(a, b) => {
                a.visit_atoms(f);
                b.visit_atoms(f);
            }
        }
    }

    /// Swaps history and prophecy clocks throughout.
    pub fn mirrored(&self) -> Guard {
        match self {
            Guard::True => Guard::True,
            Guard::Atom(a) => Guard::Atom(AtomicConstraint {
                clock: a.clock.dual(),
                op: a.op,
                bound: a.bound,
            }),
            Guard::Not(g) => Guard::not(g.mirrored()),
            Guard::And(a, b) => Guard::and(a.mirrored(), b.mirrored()),
            Guard::Or(a, b) => Guard::or(a.mirrored(), b.mirrored()),
        }
    }

    pub fn satisfied_by(&self, v: &Valuation) -> Result<bool> {
        satisfies(v, self)
    }
}

/// `v ⊨ g`.
pub fn satisfies(v: &Valuation, g: &Guard) -> Result<bool> {
    Ok(match g {
        Guard::True => true,
        Guard::Atom(a) => match v.value(&a.clock)? {
            None => false,
            Some(q) => {
                let c = int(a.bound as i64);
                match a.op {
                    CmpOp::Lt => *q < c,
                    CmpOp::Eq => *q == c,
                    CmpOp::Gt => *q > c,
                }
            }
        },
        Guard::Not(inner) => !satisfies(v, inner)?,
        Guard::And(a, b) => satisfies(v, a)? && satisfies(v, b)?,
        Guard::Or(a, b) => satisfies(v, a)? || satisfies(v, b)?,
    })
}

impl fmt::Display for AtomicConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.clock, self.op.symbol(), self.bound)
    }
}

impl fmt::Display for Guard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Fully parenthesised binary nodes keep the printed form unambiguous.
        match self {
            Guard::True => f.write_str("true"),
            Guard::Atom(a) => write!(f, "{a}"),
            Guard::Not(g) => write!(f, "!({g})"),
            Guard::And(a, b) => write!(f, "({a} && {b})"),
            Guard::Or(a, b) => write!(f, "({a} || {b})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    True,
    Clock(Clock),
    Number(u32),
    Op(CmpOp),
    Not,
    And,
    Or,
    LParen,
    RParen,
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        let mut parser = Parser {
            tokens: Vec::new(),
            pos: 0,
            len: text.len(),
        };
        parser.lex(text)?;
        Ok(parser)
    }

    fn lex(&mut self, text: &str) -> Result<()> {
        let bytes = text.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            let start = i;
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            let tok = match c {
                '(' => {
                    i += 1;
                    Token::LParen
                }
                ')' => {
                    i += 1;
                    Token::RParen
                }
                '!' => {
                    i += 1;
                    Token::Not
                }
                '<' => {
                    i += 1;
                    Token::Op(CmpOp::Lt)
                }
                '>' => {
                    i += 1;
                    Token::Op(CmpOp::Gt)
                }
                '=' => {
                    i += if bytes.get(i + 1) == Some(&b'=') {
                        2
                    } else {
                        1
                    };
                    Token::Op(CmpOp::Eq)
                }
                '&' if bytes.get(i + 1) == Some(&b'&') => {
                    i += 2;
                    Token::And
                }
                '|' if bytes.get(i + 1) == Some(&b'|') => {
                    i += 2;
                    Token::Or
                }
                d if d.is_ascii_digit() => {
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let n = text[start..i].parse().map_err(|_| Error::Parse {
                        offset: start,
                        message: "constant out of range".into(),
                    })?;
                    Token::Number(n)
                }
                w if w.is_ascii_alphabetic() || w == '_' => {
                    while i < bytes.len()
                        && (bytes[i].is_ascii_alphanumeric()
                            || bytes[i] == b'_'
                            || bytes[i] == b'.')
                    {
                        i += 1;
                    }
                    let word = &text[start..i];
                    if word == "true" {
                        Token::True
                    } else {
                        Token::Clock(Clock::parse(word).map_err(|_| Error::Parse {
                            offset: start,
                            message: format!("expected clock like `h.a`, got `{word}`"),
                        })?)
                    }
                }
                other => {
                    return Err(Error::Parse {
                        offset: start,
                        message: format!("unexpected character `{other}`"),
                    })
                }
            };
            self.tokens.push((start, tok));
        }
        Ok(())
    }

    fn parse_all(mut self) -> Result<Guard> {
        let g = self.parse_or()?;
        if let Some((offset, tok)) = self.tokens.get(self.pos) {
            return Err(Error::Parse {
                offset: *offset,
                message: format!("unexpected token {tok:?}"),
            });
        }
        Ok(g)
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(o, _)| *o)
            .unwrap_or(self.len)
    }

    fn parse_or(&mut self) -> Result<Guard> {
        let mut g = self.parse_and()?;
        while self.peek() == Some(&Token::Or) {
            self.pos += 1;
            g = Guard::or(g, self.parse_and()?);
        }
        Ok(g)
    }

    fn parse_and(&mut self) -> Result<Guard> {
        let mut g = self.parse_unary()?;
        while self.peek() == Some(&Token::And) {
            self.pos += 1;
            g = Guard::and(g, self.parse_unary()?);
        }
        Ok(g)
    }

    fn parse_unary(&mut self) -> Result<Guard> {
        let offset = self.offset();
        match self.tokens.get(self.pos).map(|(_, t)| t.clone()) {
            Some(Token::Not) => {
                self.pos += 1;
                Ok(Guard::not(self.parse_unary()?))
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let g = self.parse_or()?;
                if self.peek() != Some(&Token::RParen) {
                    return Err(Error::Parse {
                        offset: self.offset(),
                        message: "expected `)`".into(),
                    });
                }
                self.pos += 1;
                Ok(g)
            }
            Some(Token::True) => {
                self.pos += 1;
                Ok(Guard::True)
            }
            Some(Token::Clock(clock)) => {
                self.pos += 1;
                let op = match self.peek() {
                    Some(Token::Op(op)) => *op,
                    _ => {
                        return Err(Error::Parse {
                            offset: self.offset(),
                            message: "expected `<`, `=` or `>`".into(),
                        })
                    }
                };
                self.pos += 1;
                let bound = match self.peek() {
                    Some(Token::Number(n)) => *n,
                    _ => {
                        return Err(Error::Parse {
                            offset: self.offset(),
                            message: "expected a natural constant".into(),
                        })
                    }
                };
                self.pos += 1;
                Ok(Guard::atom(clock, op, bound))
            }
            _ => Err(Error::Parse {
                offset,
                message: "expected a constraint".into(),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clock::Valuation;

    fn v(text: &str) -> Valuation {
        Valuation::parse(text).unwrap()
    }

    #[test]
    fn satisfaction_examples() {
        let val = v("h.b=bot, p.a=1/2");
        assert!(satisfies(&val, &Guard::True).unwrap());
        assert!(!satisfies(&val, &Guard::parse("h.b = 1").unwrap()).unwrap());
        assert!(satisfies(&val, &Guard::parse("!(h.b = 1)").unwrap()).unwrap());

        let val = v("h.b=1, p.a=1/2");
        let g = Guard::parse("!(h.b < 1) && p.a > 0").unwrap();
        assert!(satisfies(&val, &g).unwrap());
    }

    #[test]
    fn unknown_clock_is_an_error() {
        let g = Guard::parse("h.z < 2").unwrap();
        assert_eq!(
            satisfies(&v("h.a=0"), &g),
            Err(Error::UnknownClock(Clock::history("z")))
        );
    }

    #[test]
    fn parses_precedence() {
        let g = Guard::parse("h.a < 3 || p.b = 1 && !h.a > 0").unwrap();
        let expected = Guard::or(
            Guard::atom(Clock::history("a"), CmpOp::Lt, 3),
            Guard::and(
                Guard::atom(Clock::prophecy("b"), CmpOp::Eq, 1),
                Guard::not(Guard::atom(Clock::history("a"), CmpOp::Gt, 0)),
            ),
        );
        assert_eq!(g, expected);
        assert_eq!(Guard::parse(&g.to_string()).unwrap(), g);
        assert_eq!(g.max_constant(), 3);
    }

    #[test]
    fn parse_errors_carry_offsets() {
        for bad in [
            "",
            "h.a <",
            "h.a < x",
            "(h.a < 1",
            "h.a < 1 )",
            "q.a < 1",
            "h.a # 1",
        ] {
            assert!(
                matches!(Guard::parse(bad), Err(Error::Parse { .. })),
                "`{bad}` should not parse"
            );
        }
    }

    #[test]
    fn mirror_swaps_kinds() {
        let g = Guard::parse("p.b = 1 && !(h.a > 2)").unwrap();
        assert_eq!(g.mirrored().to_string(), "(h.b = 1 && !(p.a > 2))");
    }
}
