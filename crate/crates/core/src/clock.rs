//! Event clocks, valuations with the undefined value, and time elapse.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

pub type Rational = BigRational;

/// Builds the rational `num/den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `3`, `1.25`, `-2`, or `5/4`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let err = |message: &str| Error::Parse {
        offset: 0,
        message: format!("{message}: `{text}`"),
    };
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err("bad numerator"))?;
        let d: BigInt = d.trim().parse().map_err(|_| err("bad denominator"))?;
        if d.is_zero() {
            return Err(err("zero denominator"));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, fraction)) = s.split_once('.') {
        if fraction.is_empty() || !fraction.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err("bad decimal"));
        }
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        let whole: BigInt = if whole_digits.is_empty() {
            BigInt::zero()
        } else {
            whole_digits.parse().map_err(|_| err("bad decimal"))?
        };
        let frac: BigInt = fraction.parse().map_err(|_| err("bad decimal"))?;
        let scale = num_traits::pow(BigInt::from(10), fraction.len());
        let magnitude = Rational::new(whole * &scale + frac, scale);
        return Ok(if negative { -magnitude } else { magnitude });
    }
    let n: BigInt = s.parse().map_err(|_| err("bad number"))?;
    Ok(Rational::from_integer(n))
}

/// Renders a rational as `n` or `n/d`.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Symbol(pub String);

impl Symbol {
    pub fn new(name: impl Into<String>) -> Self {
        Symbol(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Symbol {
    fn from(s: &str) -> Self {
        Symbol(s.to_string())
    }
}

impl From<String> for Symbol {
    fn from(s: String) -> Self {
        Symbol(s)
    }
}

/// A finite, nonempty set of letters kept in lexicographic order.
///
/// The order fixes clock indices in event DBMs: history clocks first, then
/// prophecy clocks, each group in letter order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    letters: Vec<Symbol>,
}

impl Alphabet {
    pub fn new<I, S>(letters: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<Symbol>,
    {
        let mut letters: Vec<Symbol> = letters.into_iter().map(Into::into).collect();
        if letters.is_empty() {
            return Err(Error::InvalidAutomaton("alphabet is empty".into()));
        }
        letters.sort();
        for pair in letters.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::InvalidAutomaton(format!(
                    "duplicate letter `{}`",
                    pair[0]
                )));
            }
        }
        for l in &letters {
            if l.0.is_empty() || !l.0.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(Error::InvalidAutomaton(format!("bad letter name `{l}`")));
            }
        }
        Ok(Alphabet { letters })
    }

    pub fn letters(&self) -> &[Symbol] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn contains(&self, letter: &Symbol) -> bool {
        self.letters.binary_search(letter).is_ok()
    }

    /// The full clock set C(Σ) in matrix order, 2|Σ| clocks.
    pub fn clocks(&self) -> Arc<[Clock]> {
        let history = self.letters.iter().map(|l| Clock::history(l.clone()));
        let prophecy = self.letters.iter().map(|l| Clock::prophecy(l.clone()));
        history.chain(prophecy).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClockKind {
    History,
    Prophecy,
}

impl ClockKind {
    pub fn dual(self) -> ClockKind {
        match self {
            ClockKind::History => ClockKind::Prophecy,
            ClockKind::Prophecy => ClockKind::History,
        }
    }
}

/// An event clock: `h.a` records time since the last `a`, `p.a` predicts
/// the time to the next `a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Clock {
    pub kind: ClockKind,
    pub letter: Symbol,
}

impl Clock {
    pub fn history(letter: impl Into<Symbol>) -> Self {
        Clock {
            kind: ClockKind::History,
            letter: letter.into(),
        }
    }

    pub fn prophecy(letter: impl Into<Symbol>) -> Self {
        Clock {
            kind: ClockKind::Prophecy,
            letter: letter.into(),
        }
    }

    pub fn is_history(&self) -> bool {
        self.kind == ClockKind::History
    }

    pub fn is_prophecy(&self) -> bool {
        self.kind == ClockKind::Prophecy
    }

    /// The clock of the other kind on the same letter.
    pub fn dual(&self) -> Clock {
        Clock {
            kind: self.kind.dual(),
            letter: self.letter.clone(),
        }
    }

    /// Parses `h.a` or `p.a`.
    pub fn parse(text: &str) -> Result<Clock> {
        let bad = || Error::Parse {
            offset: 0,
            message: format!("expected clock like `h.a` or `p.a`, got `{text}`"),
        };
        let (kind, letter) = text.trim().split_once('.').ok_or_else(bad)?;
        let kind = match kind {
            "h" => ClockKind::History,
            "p" => ClockKind::Prophecy,
            _ => return Err(bad()),
        };
        if letter.is_empty() || !letter.chars().all(|c| c.is_alphanumeric() || c == '_') {
            return Err(bad());
        }
        Ok(Clock {
            kind,
            letter: Symbol::new(letter),
        })
    }
}

impl fmt::Display for Clock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ClockKind::History => write!(f, "h.{}", self.letter),
            ClockKind::Prophecy => write!(f, "p.{}", self.letter),
        }
    }
}

/// A clock value: `None` is the undefined value ⊥.
pub type ClockValue = Option<Rational>;

fn fmt_value(v: &ClockValue) -> String {
    match v {
        None => "bot".to_string(),
        Some(q) => format_rational(q),
    }
}

/// Assignment of each clock of a fixed domain to a nonnegative rational or ⊥.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Valuation {
    values: BTreeMap<Clock, ClockValue>,
}

impl Valuation {
    pub fn new<I>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Clock, ClockValue)>,
    {
        let mut values = BTreeMap::new();
        for (clock, value) in entries {
            if let Some(q) = &value {
                if q.is_negative() {
                    return Err(Error::PreconditionViolated(format!(
                        "negative value {} for {clock}",
                        format_rational(q)
                    )));
                }
            }
            values.insert(clock, value);
        }
        Ok(Valuation { values })
    }

    /// Every clock of `clocks` set to ⊥.
    pub fn bottom<'a>(clocks: impl IntoIterator<Item = &'a Clock>) -> Self {
        Valuation {
            values: clocks.into_iter().map(|c| (c.clone(), None)).collect(),
        }
    }

    /// Parses `h.a=0, p.a=3/2, p.b=bot`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (clock, value) = part.split_once(['=', ':']).ok_or_else(|| Error::Parse {
                offset: 0,
                message: format!("expected `clock=value`, got `{part}`"),
            })?;
            let clock = Clock::parse(clock)?;
            let value = match value.trim() {
                "bot" | "⊥" => None,
                other => Some(parse_rational(other)?),
            };
            entries.push((clock, value));
        }
        Valuation::new(entries)
    }

    pub fn clocks(&self) -> impl Iterator<Item = &Clock> {
        self.values.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Clock, &ClockValue)> {
        self.values.iter()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn contains_clock(&self, x: &Clock) -> bool {
        self.values.contains_key(x)
    }

    pub fn value(&self, x: &Clock) -> Result<Option<&Rational>> {
        self.values
            .get(x)
            .map(Option::as_ref)
            .ok_or_else(|| Error::UnknownClock(x.clone()))
    }

    /// `v[x := c]`.
    pub fn with(&self, x: &Clock, value: ClockValue) -> Result<Valuation> {
        if !self.values.contains_key(x) {
            return Err(Error::UnknownClock(x.clone()));
        }
        if let Some(q) = &value {
            if q.is_negative() {
                return Err(Error::PreconditionViolated(format!(
                    "negative value for {x}"
                )));
            }
        }
        let mut values = self.values.clone();
        values.insert(x.clone(), value);
        Ok(Valuation { values })
    }

    /// `v + d`: history clocks gain `d`, prophecy clocks lose `d`, ⊥ stays ⊥.
    pub fn elapse(&self, d: &Rational) -> Result<Valuation> {
        if d.is_negative() {
            return Err(Error::PreconditionViolated("negative delay".into()));
        }
        let mut values = BTreeMap::new();
        for (x, v) in &self.values {
            let next = match v {
                None => None,
                Some(q) if x.is_history() => Some(q + d),
                Some(q) => {
                    if q < d {
                        return Err(Error::PreconditionViolated(format!(
                            "{x} = {} cannot elapse {}",
                            format_rational(q),
                            format_rational(d)
                        )));
                    }
                    Some(q - d)
                }
            };
            values.insert(x.clone(), next);
        }
        Ok(Valuation { values })
    }

    /// Fractional distance `⟨v(x)⟩`: up to the next integer for history
    /// clocks, down to the previous one for prophecy clocks.
    pub fn frac(&self, x: &Clock) -> Result<Rational> {
        let q = self
            .value(x)?
            .ok_or_else(|| Error::UndefinedClock(x.clone()))?;
        Ok(clock_frac(x.kind, q))
    }

    /// `v̂(x)`: the value itself for history clocks, negated for prophecy.
    pub fn signed(&self, x: &Clock) -> Result<Option<Rational>> {
        Ok(self.value(x)?.map(|q| signed_value(x.kind, q)))
    }

    pub fn plmin(&self) -> SignedValuation {
        SignedValuation {
            values: self
                .values
                .iter()
                .map(|(x, v)| (x.clone(), v.as_ref().map(|q| signed_value(x.kind, q))))
                .collect(),
        }
    }

    /// All history clocks undefined.
    pub fn is_initial(&self) -> bool {
        self.values
            .iter()
            .all(|(x, v)| x.is_prophecy() || v.is_none())
    }

    /// All prophecy clocks undefined.
    pub fn is_final(&self) -> bool {
        self.values
            .iter()
            .all(|(x, v)| x.is_history() || v.is_none())
    }

    pub fn same_domain(&self, other: &Valuation) -> bool {
        self.values.len() == other.values.len()
            && self
                .values
                .keys()
                .zip(other.values.keys())
                .all(|(a, b)| a == b)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (x, v)) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}={}", fmt_value(v))?;
        }
        f.write_str("}")
    }
}

/// A valuation after prophecy values have been negated; entries may be negative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedValuation {
    values: BTreeMap<Clock, Option<Rational>>,
}

impl SignedValuation {
    pub fn get(&self, x: &Clock) -> Option<&Option<Rational>> {
        self.values.get(x)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Clock, &Option<Rational>)> {
        self.values.iter()
    }

    /// Undoes the sign flip. Fails if a history entry is negative or a
    /// prophecy entry positive.
    pub fn unsigned(&self) -> Result<Valuation> {
        Valuation::new(
            self.values
                .iter()
                .map(|(x, v)| (x.clone(), v.as_ref().map(|q| signed_value(x.kind, q)))),
        )
    }
}

pub(crate) fn signed_value(kind: ClockKind, q: &Rational) -> Rational {
    match kind {
        ClockKind::History => q.clone(),
        ClockKind::Prophecy => -q,
    }
}

pub(crate) fn clock_frac(kind: ClockKind, q: &Rational) -> Rational {
    match kind {
        ClockKind::History => q.ceil() - q,
        ClockKind::Prophecy => q - q.floor(),
    }
}

/// Whether `v2 ∈ v +_w t`: prophecy clocks above `cmax` in `v` may land
/// anywhere above `cmax - t`; every other clock follows the exact elapse.
pub fn weak_successor_contains(v: &Valuation, t: &Rational, v2: &Valuation, cmax: u32) -> bool {
    if !v.same_domain(v2) || t.is_negative() {
        return false;
    }
    let cmax = int(cmax as i64);
    v.iter()
        .zip(v2.iter())
        .all(|((x, before), (_, after))| match before {
            Some(q) if x.is_prophecy() && *q > cmax => match after {
                Some(r) => *r > &cmax - t,
                None => false,
            },
            None => after.is_none(),
            Some(q) => {
                let expected = if x.is_history() {
                    q + t
                } else if q >= t {
                    q - t
                } else {
                    return false;
                };
                after.as_ref() == Some(&expected)
            }
        })
}
