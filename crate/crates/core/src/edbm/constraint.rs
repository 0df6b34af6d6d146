use super::Bound;
use crate::clock::{Clock, ClockKind};
use crate::error::{Error, Result};
use num_bigint::BigInt;

/// Left-hand side of a zone constraint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Single(Clock),
    /// `x - y`, both clocks of the same kind.
    Diff(Clock, Clock),
    /// `x + y`, one history and one prophecy clock.
    Sum(Clock, Clock),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    Lt,
    Le,
    Eq,
    Ge,
    Gt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Constraint {
    Bot(Clock),
    Real(Clock),
    Cmp(Term, Rel, i64),
}

fn sign(kind: ClockKind) -> i64 {
    match kind {
        ClockKind::History => 1,
        ClockKind::Prophecy => -1,
    }
}

fn index(clocks: &[Clock], x: &Clock) -> Result<usize> {
    clocks
        .iter()
        .position(|c| c == x)
        .map(|p| p + 1)
        .ok_or_else(|| Error::UnknownClock(x.clone()))
}

impl Constraint {
    pub fn cmp(term: Term, rel: Rel, c: i64) -> Constraint {
        Constraint::Cmp(term, rel, c)
    }

    pub fn clock(x: Clock, rel: Rel, c: i64) -> Constraint {
        Constraint::Cmp(Term::Single(x), rel, c)
    }

    /// EDBM cells whose conjunction expresses this constraint.
    pub fn cells(&self, clocks: &[Clock]) -> Result<Vec<(usize, usize, Bound)>> {
        match self {
            Constraint::Bot(x) => {
                let i = index(clocks, x)?;
                Ok(vec![(i, 0, Bound::Bottom), (0, i, Bound::Bottom)])
            }
            Constraint::Real(x) => {
                let i = index(clocks, x)?;
                Ok(vec![(i, i, Bound::zero_le())])
            }
            Constraint::Cmp(term, rel, c) => {
                // term value = s * (v̂_i - v̂_j)
                let (i, j, s) = match term {
                    Term::Single(x) => (index(clocks, x)?, 0, sign(x.kind)),
                    Term::Diff(x, y) => {
                        if x.kind != y.kind {
                            return Err(Error::Unsupported(format!(
                                "{x} - {y} mixes history and prophecy clocks; use a sum"
                            )));
                        }
                        (index(clocks, x)?, index(clocks, y)?, sign(x.kind))
                    }
                    Term::Sum(x, y) => {
                        if x.kind == y.kind {
                            return Err(Error::Unsupported(format!(
                                "{x} + {y} relates clocks of one kind; use a difference"
                            )));
                        }
                        (index(clocks, x)?, index(clocks, y)?, sign(x.kind))
                    }
                };
                let c = BigInt::from(*c);
                // value ≤ c with value = s·d
                let upper = |strict: bool| {
                    let b = if strict {
                        Bound::Finite(c.clone(), super::Strictness::Lt)
                    } else {
                        Bound::Finite(c.clone(), super::Strictness::Le)
                    };
                    if s > 0 {
                        (i, j, b)
                    } else {
                        (j, i, b)
                    }
                };
                // value ≥ c  ⇔  -value ≤ -c
                let lower = |strict: bool| {
                    let m = -c.clone();
                    let b = if strict {
                        Bound::Finite(m, super::Strictness::Lt)
                    } else {
                        Bound::Finite(m, super::Strictness::Le)
                    };
                    if s > 0 {
                        (j, i, b)
                    } else {
                        (i, j, b)
                    }
                };
                Ok(match rel {
                    Rel::Lt => vec![upper(true)],
                    Rel::Le => vec![upper(false)],
                    Rel::Eq => vec![upper(false), lower(false)],
                    Rel::Ge => vec![lower(false)],
                    Rel::Gt => vec![lower(true)],
                })
            }
        }
    }

    /// Parses `&&`-separated constraints such as `h.a = bot`, `p.b real`,
    /// `p.b - p.a = 1`, `h.a + p.b >= 2`, `h.b < 3`. `true` is allowed.
    pub fn parse_conjunction(text: &str) -> Result<Vec<Constraint>> {
        let mut out = Vec::new();
        let mut offset = 0;
        for part in text.split("&&") {
            let trimmed = part.trim();
            if !trimmed.is_empty() && trimmed != "true" {
                out.push(parse_one(trimmed).map_err(|message| Error::Parse { offset, message })?);
            }
            offset += part.len() + 2;
        }
        Ok(out)
    }
}

fn parse_one(text: &str) -> std::result::Result<Constraint, String> {
    if let Some(lhs) = text.strip_suffix("real") {
        return Ok(Constraint::Real(parse_clock(lhs.trim())?));
    }
    let ops = [
        ("<=", Rel::Le),
        (">=", Rel::Ge),
        ("==", Rel::Eq),
        ("<", Rel::Lt),
        (">", Rel::Gt),
        ("=", Rel::Eq),
    ];
    let (pos, len, rel) = ops
        .iter()
        .filter_map(|(tok, rel)| text.find(tok).map(|p| (p, tok.len(), *rel)))
        .min_by_key(|(p, len, _)| (*p, std::cmp::Reverse(*len)))
        .ok_or_else(|| format!("no comparison in `{text}`"))?;
    let lhs = text[..pos].trim();
    let rhs = text[pos + len..].trim();
    if rhs == "bot" || rhs == "⊥" {
        if rel != Rel::Eq {
            return Err(format!("only `= bot` is allowed, in `{text}`"));
        }
        return Ok(Constraint::Bot(parse_clock(lhs)?));
    }
    let c: i64 = rhs.parse().map_err(|_| format!("bad constant `{rhs}`"))?;
    let term = if let Some((a, b)) = split_binary(lhs, '+') {
        Term::Sum(parse_clock(a)?, parse_clock(b)?)
    } else if let Some((a, b)) = split_binary(lhs, '-') {
        Term::Diff(parse_clock(a)?, parse_clock(b)?)
    } else {
        Term::Single(parse_clock(lhs)?)
    };
    Ok(Constraint::Cmp(term, rel, c))
}

fn split_binary(text: &str, op: char) -> Option<(&str, &str)> {
    let p = text.find(op)?;
    Some((text[..p].trim(), text[p + 1..].trim()))
}

fn parse_clock(text: &str) -> std::result::Result<Clock, String> {
    Clock::parse(text).map_err(|e| e.to_string())
}
