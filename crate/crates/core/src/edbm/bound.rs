use crate::clock::Rational;
use num_bigint::BigInt;
use num_traits::Zero;
use std::cmp::Ordering;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strictness {
    Lt,
    Le,
}

/// One EDBM cell.
///
/// `Finite` and `Infinity` are numeric constraints on `v̂(x_i) - v̂(x_j)` and
/// force both clocks to be real; `Bottom` pins the clock to ⊥ (row or
/// column 0 only); `Free` imposes nothing at all.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Bound {
    Finite(BigInt, Strictness),
    Infinity,
    Bottom,
    Free,
}

impl Bound {
    pub fn le(c: i64) -> Bound {
        Bound::Finite(BigInt::from(c), Strictness::Le)
    }

    pub fn lt(c: i64) -> Bound {
        Bound::Finite(BigInt::from(c), Strictness::Lt)
    }

    pub fn zero_le() -> Bound {
        Bound::Finite(BigInt::zero(), Strictness::Le)
    }

    pub fn is_numeric(&self) -> bool {
        matches!(self, Bound::Finite(..) | Bound::Infinity)
    }

    /// Bound addition: `(m1,≺1)+(m2,≺2) = (m1+m2, ≤ iff both ≤)`.
    /// Only defined on numeric bounds.
    pub fn add(&self, other: &Bound) -> Option<Bound> {
        match (self, other) {
            (Bound::Finite(a, s), Bound::Finite(b, t)) => {
                let strict = if *s == Strictness::Le && *t == Strictness::Le {
                    Strictness::Le
                } else {
                    Strictness::Lt
                };
                Some(Bound::Finite(a + b, strict))
            }
            (Bound::Infinity, x) | (x, Bound::Infinity) if x.is_numeric() => Some(Bound::Infinity),
            _ => None,
        }
    }

    /// Total order on numeric bounds: `(m,<) < (m,≤) < (m+1,<) < ... < (∞,<)`.
    pub fn cmp_numeric(&self, other: &Bound) -> Option<Ordering> {
        match (self, other) {
            (Bound::Finite(a, s), Bound::Finite(b, t)) => Some(a.cmp(b).then(s.cmp(t))),
            (Bound::Finite(..), Bound::Infinity) => Some(Ordering::Less),
            (Bound::Infinity, Bound::Finite(..)) => Some(Ordering::Greater),
            (Bound::Infinity, Bound::Infinity) => Some(Ordering::Equal),
            _ => None,
        }
    }

    /// Whether a real difference `d` satisfies `d ≺ m`.
    pub fn admits(&self, d: &Rational) -> bool {
        match self {
            Bound::Finite(m, Strictness::Lt) => *d < Rational::from_integer(m.clone()),
            Bound::Finite(m, Strictness::Le) => *d <= Rational::from_integer(m.clone()),
            Bound::Infinity => true,
            Bound::Bottom | Bound::Free => false,
        }
    }

    /// The bound at the transposed cell describing `¬(d ≺ m)`, i.e. `-d ≺' -m`.
    /// `None` for `(∞,<)`, which no real difference violates.
    pub fn complement(&self) -> Option<Bound> {
        match self {
            Bound::Finite(m, Strictness::Lt) => Some(Bound::Finite(-m, Strictness::Le)),
            Bound::Finite(m, Strictness::Le) => Some(Bound::Finite(-m, Strictness::Lt)),
            _ => None,
        }
    }

    pub fn token(&self) -> String {
        match self {
            Bound::Finite(m, Strictness::Le) => format!("<={m}"),
            Bound::Finite(m, Strictness::Lt) => format!("<{m}"),
            Bound::Infinity => "<inf".into(),
            Bound::Bottom => "bot".into(),
            Bound::Free => "?".into(),
        }
    }

    pub fn parse_token(token: &str) -> Option<Bound> {
        match token {
            "<inf" => Some(Bound::Infinity),
            "bot" => Some(Bound::Bottom),
            "?" => Some(Bound::Free),
            t => {
                if let Some(rest) = t.strip_prefix("<=") {
                    rest.parse().ok().map(|m| Bound::Finite(m, Strictness::Le))
                } else if let Some(rest) = t.strip_prefix('<') {
                    rest.parse().ok().map(|m| Bound::Finite(m, Strictness::Lt))
                } else {
                    None
                }
            }
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.token())
    }
}

/// The partial order on cells: `b1 ≤ b2` iff `b2` is `?`, or both are
/// numeric with `m1 < m2`, or `m1 = m2` and the strictness is equal or `b2`
/// is non-strict. `(⊥,=)` is incomparable with every numeric bound.
pub fn bound_le(b1: &Bound, b2: &Bound) -> bool {
    match (b1, b2) {
        (_, Bound::Free) => true,
        (Bound::Bottom, Bound::Bottom) => true,
        (Bound::Finite(m1, s1), Bound::Finite(m2, s2)) => {
            m1 < m2 || (m1 == m2 && (s1 == s2 || *s2 == Strictness::Le))
        }
        (Bound::Finite(..), Bound::Infinity) => true,
        (Bound::Infinity, Bound::Infinity) => true,
        _ => false,
    }
}

/// Meet of two cells; `None` when they are incomparable.
pub fn bound_min(b1: &Bound, b2: &Bound) -> Option<Bound> {
    if bound_le(b1, b2) {
        Some(b1.clone())
    } else if bound_le(b2, b1) {
        Some(b2.clone())
    } else {
        None
    }
}
