//! Event zones represented as Event Difference Bound Matrices.
//!
//! Index 0 is the reference clock `x0 = 0`; index `i ≥ 1` is `clocks[i-1]`.
//! Cell `(i, j)` bounds `v̂(x_i) - v̂(x_j)` where `v̂` negates prophecy clocks,
//! so a cell relating clocks of different kinds bounds their sum.

mod bound;
mod constraint;
mod guard_zones;

pub use bound::{bound_le, bound_min, Bound, Strictness};
pub use constraint::{Constraint, Rel, Term};
pub use guard_zones::guard_to_zones;

use crate::clock::{format_rational, signed_value, Clock, ClockKind, Rational, Valuation};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;
use std::sync::Arc;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Edbm {
    clocks: Arc<[Clock]>,
    cells: Vec<Bound>,
}

impl fmt::Debug for Edbm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Edbm[{}]", self.debug_string())
    }
}

impl fmt::Display for Edbm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

impl Edbm {
    /// A matrix with every cell `?` except `(0,0) = (0,≤)`: every valuation.
    pub fn unconstrained(clocks: Arc<[Clock]>) -> Edbm {
        let dim = clocks.len() + 1;
        let mut cells = vec![Bound::Free; dim * dim];
        cells[0] = Bound::zero_le();
        Edbm { clocks, cells }
    }

    /// The canonical empty EDBM: `(0,0) = (-1,<)`, everything else `?`.
    pub fn empty(clocks: Arc<[Clock]>) -> Edbm {
        let dim = clocks.len() + 1;
        let mut cells = vec![Bound::Free; dim * dim];
        cells[0] = Bound::lt(-1);
        Edbm { clocks, cells }
    }

    /// Wraps a row-major cell list without normalizing it.
    pub fn from_cells(clocks: Arc<[Clock]>, cells: Vec<Bound>) -> Result<Edbm> {
        let dim = clocks.len() + 1;
        if cells.len() != dim * dim {
            return Err(Error::PreconditionViolated(format!(
                "expected {} cells, got {}",
                dim * dim,
                cells.len()
            )));
        }
        for i in 1..dim {
            for j in 1..dim {
                if cells[i * dim + j] == Bound::Bottom {
                    return Err(Error::PreconditionViolated(format!(
                        "(bot,=) at ({i},{j}) outside row/column 0"
                    )));
                }
            }
        }
        if cells[0] == Bound::Bottom {
            return Err(Error::PreconditionViolated("(bot,=) at (0,0)".into()));
        }
        Ok(Edbm { clocks, cells })
    }

    /// Parses the debug form produced by [`Edbm::debug_string`]: rows
    /// separated by `|`, cells by whitespace.
    pub fn parse_cells(clocks: Arc<[Clock]>, text: &str) -> Result<Edbm> {
        let mut cells = Vec::new();
        for token in text.split(|c: char| c == '|' || c.is_whitespace()) {
            if token.is_empty() {
                continue;
            }
            cells.push(Bound::parse_token(token).ok_or_else(|| Error::Parse {
                offset: 0,
                message: format!("bad EDBM cell `{token}`"),
            })?);
        }
        Edbm::from_cells(clocks, cells)
    }

    /// The normalized zone described by a conjunction of constraints.
    pub fn from_constraints(clocks: Arc<[Clock]>, constraints: &[Constraint]) -> Result<Edbm> {
        let mut m = Edbm::unconstrained(clocks);
        for c in constraints {
            for (i, j, b) in c.cells(&m.clocks)? {
                if !m.tighten(i, j, &b) {
                    return Ok(Edbm::empty(m.clocks));
                }
            }
        }
        Ok(m.normalize())
    }

    /// Parses `p.b - p.a = 1 && h.a = bot && h.b >= 2` over `clocks`.
    pub fn parse(clocks: Arc<[Clock]>, text: &str) -> Result<Edbm> {
        let constraints = Constraint::parse_conjunction(text)?;
        Edbm::from_constraints(clocks, &constraints)
    }

    pub fn clocks(&self) -> &Arc<[Clock]> {
        &self.clocks
    }

    pub fn dim(&self) -> usize {
        self.clocks.len() + 1
    }

    pub fn get(&self, i: usize, j: usize) -> &Bound {
        &self.cells[i * self.dim() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, b: Bound) {
        assert!(
            b != Bound::Bottom || i == 0 || j == 0,
            "(bot,=) only allowed in row or column 0"
        );
        let dim = self.dim();
        self.cells[i * dim + j] = b;
    }

    pub fn cells(&self) -> &[Bound] {
        &self.cells
    }

    pub fn index_of(&self, x: &Clock) -> Result<usize> {
        self.clocks
            .iter()
            .position(|c| c == x)
            .map(|p| p + 1)
            .ok_or_else(|| Error::UnknownClock(x.clone()))
    }

    fn kind(&self, i: usize) -> Option<ClockKind> {
        (i > 0).then(|| self.clocks[i - 1].kind)
    }

    pub fn is_empty(&self) -> bool {
        self.cells[0] == Bound::lt(-1)
    }

    /// Meets cell `(i,j)` with `b`; returns false on a ⊥/numeric clash.
    fn tighten(&mut self, i: usize, j: usize, b: &Bound) -> bool {
        match bound_min(self.get(i, j), b) {
            Some(m) => {
                let dim = self.dim();
                self.cells[i * dim + j] = m;
                true
            }
            None => false,
        }
    }

    fn check_same_clocks(&self, other: &Edbm) -> Result<()> {
        if self.clocks == other.clocks {
            Ok(())
        } else {
            Err(Error::ClockMismatch)
        }
    }

    /// Weakest numeric cell that only says "both clocks are real".
    fn real_default(&self, i: usize, j: usize) -> Bound {
        let upper_side = matches!(self.kind(i), None | Some(ClockKind::Prophecy));
        let lower_side = matches!(self.kind(j), None | Some(ClockKind::History));
        if upper_side && lower_side {
            Bound::zero_le()
        } else {
            Bound::Infinity
        }
    }

    /// Normal form: propagate ⊥, mark the clocks forced real, fill their
    /// unconstrained cells with the weakest real bound, then run the
    /// shortest-path closure on the real part. Returns [`Edbm::empty`] iff
    /// the zone is empty.
    pub fn normalize(&self) -> Edbm {
        if self.is_empty() {
            return Edbm::empty(self.clocks.clone());
        }
        let dim = self.dim();
        let mut m = self.clone();

        for i in 1..dim {
            let row = m.get(i, 0).clone();
            let col = m.get(0, i).clone();
            if row != Bound::Bottom && col != Bound::Bottom {
                continue;
            }
            if row.is_numeric() || col.is_numeric() {
                return Edbm::empty(m.clocks);
            }
            if (1..dim).any(|j| *m.get(i, j) != Bound::Free || *m.get(j, i) != Bound::Free) {
                return Edbm::empty(m.clocks);
            }
            m.set(i, 0, Bound::Bottom);
            m.set(0, i, Bound::Bottom);
        }

        let mut real = vec![false; dim];
        real[0] = true;
        for i in 0..dim {
            for j in 0..dim {
                if m.get(i, j).is_numeric() {
                    real[i] = true;
                    real[j] = true;
                }
            }
        }
        let s: Vec<usize> = (0..dim).filter(|&i| real[i]).collect();
        for &i in &s {
            for &j in &s {
                // the default is implied by both clocks being real, so it
                // also tightens explicit cells
                let d = m.real_default(i, j);
                if *m.get(i, j) == Bound::Free {
                    m.set(i, j, d);
                } else if i != j && !m.tighten(i, j, &d) {
                    return Edbm::empty(m.clocks);
                }
            }
            if !m.tighten(i, i, &Bound::zero_le()) {
                return Edbm::empty(m.clocks);
            }
        }

        for &k in &s {
            for &i in &s {
                if i == k {
                    continue;
                }
                let ik = m.get(i, k).clone();
                if ik == Bound::Infinity {
                    continue;
                }
                for &j in &s {
                    if let Some(via) = ik.add(m.get(k, j)) {
                        if via.cmp_numeric(m.get(i, j)) == Some(std::cmp::Ordering::Less) {
                            m.set(i, j, via);
                        }
                    }
                }
            }
            if m.get(k, k).cmp_numeric(&Bound::zero_le()) == Some(std::cmp::Ordering::Less) {
                return Edbm::empty(m.clocks);
            }
        }
        for &k in &s {
            if m.get(k, k).cmp_numeric(&Bound::zero_le()) == Some(std::cmp::Ordering::Less) {
                return Edbm::empty(m.clocks);
            }
        }
        m
    }

    pub fn is_normalized(&self) -> bool {
        *self == self.normalize()
    }

    /// Membership of a valuation over exactly this clock list.
    pub fn contains(&self, v: &Valuation) -> Result<bool> {
        if v.len() != self.clocks.len() || !self.clocks.iter().all(|x| v.contains_clock(x)) {
            return Err(Error::ClockMismatch);
        }
        if self.is_empty() {
            return Ok(false);
        }
        let mut signed: Vec<Option<Rational>> = vec![Some(Rational::zero())];
        for x in self.clocks.iter() {
            signed.push(v.value(x)?.map(|q| signed_value(x.kind, q)));
        }
        let dim = self.dim();
        for i in 0..dim {
            for j in 0..dim {
                let ok = match self.get(i, j) {
                    Bound::Free => true,
                    Bound::Bottom => {
                        let k = if i == 0 { j } else { i };
                        signed[k].is_none()
                    }
                    b => match (&signed[i], &signed[j]) {
                        (Some(a), Some(c)) => b.admits(&(a - c)),
                        _ => false,
                    },
                };
                if !ok {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Time successors: drop upper bounds on `v̂` (column 0), keeping
    /// prophecy clocks nonnegative. Exact when no history clock is `?`;
    /// see [`Edbm::future_exact`].
    pub fn future(&self) -> Edbm {
        if self.is_empty() {
            return self.clone();
        }
        let mut m = self.clone();
        for i in 1..m.dim() {
            if m.get(i, 0).is_numeric() {
                let relaxed = match m.kind(i) {
                    Some(ClockKind::Prophecy) => Bound::zero_le(),
                    _ => Bound::Infinity,
                };
                m.set(i, 0, relaxed);
            }
        }
        m.normalize()
    }

    /// Time predecessors: drop lower bounds on `v̂` (row 0), keeping
    /// history clocks nonnegative. Exact when no prophecy clock is `?`;
    /// see [`Edbm::past_exact`].
    pub fn past(&self) -> Edbm {
        if self.is_empty() {
            return self.clone();
        }
        let mut m = self.clone();
        for j in 1..m.dim() {
            if m.get(0, j).is_numeric() {
                let relaxed = match m.kind(j) {
                    Some(ClockKind::History) => Bound::zero_le(),
                    _ => Bound::Infinity,
                };
                m.set(0, j, relaxed);
            }
        }
        m.normalize()
    }

    /// Splits the zone on every clock of `kind` that is unconstrained
    /// (`?`): one piece with the clock ⊥, one with it real.
    pub fn determine(&self, kind: ClockKind) -> ZoneSet {
        let mut pieces = vec![self.normalize()];
        for i in 1..self.dim() {
            if self.kind(i) != Some(kind) {
                continue;
            }
            let mut next = Vec::new();
            for m in pieces {
                if m.is_empty() || *m.get(i, 0) != Bound::Free {
                    next.push(m);
                    continue;
                }
                let mut bot = m.clone();
                bot.set(i, 0, Bound::Bottom);
                bot.set(0, i, Bound::Bottom);
                let mut real = m;
                real.set(i, i, Bound::zero_le());
                next.push(bot.normalize());
                next.push(real.normalize());
            }
            pieces = next;
        }
        ZoneSet::from_zones(self.clocks.clone(), pieces)
    }

    /// Exact time successors. [`Edbm::future`] forgets that a real history
    /// clock left unconstrained still caps the delay (it was at least 0
    /// before time passed), so history clocks are split into ⊥ and real
    /// first.
    pub fn future_exact(&self) -> ZoneSet {
        let pieces = self.determine(ClockKind::History);
        ZoneSet::from_zones(self.clocks.clone(), pieces.iter().map(Edbm::future))
    }

    /// Exact time predecessors, splitting unconstrained prophecy clocks.
    pub fn past_exact(&self) -> ZoneSet {
        let pieces = self.determine(ClockKind::Prophecy);
        ZoneSet::from_zones(self.clocks.clone(), pieces.iter().map(Edbm::past))
    }

    pub fn intersect(&self, other: &Edbm) -> Result<Edbm> {
        self.check_same_clocks(other)?;
        if self.is_empty() || other.is_empty() {
            return Ok(Edbm::empty(self.clocks.clone()));
        }
        let mut cells = Vec::with_capacity(self.cells.len());
        for (a, b) in self.cells.iter().zip(&other.cells) {
            match bound_min(a, b) {
                Some(m) => cells.push(m),
                None => return Ok(Edbm::empty(self.clocks.clone())),
            }
        }
        Ok(Edbm {
            clocks: self.clocks.clone(),
            cells,
        }
        .normalize())
    }

    /// `rel_x`: forget everything about `x`, which may then be any real or ⊥.
    pub fn release(&self, x: &Clock) -> Result<Edbm> {
        let k = self.index_of(x)?;
        if self.is_empty() {
            return Ok(self.clone());
        }
        let mut m = self.clone();
        for j in 0..m.dim() {
            m.set(k, j, Bound::Free);
            m.set(j, k, Bound::Free);
        }
        Ok(m.normalize())
    }

    /// `⟦self⟧ ⊆ ⟦other⟧`, by cellwise comparison of normal forms.
    pub fn is_subset_of(&self, other: &Edbm) -> Result<bool> {
        self.check_same_clocks(other)?;
        if self.is_empty() {
            return Ok(true);
        }
        if other.is_empty() {
            return Ok(false);
        }
        Ok(self
            .cells
            .iter()
            .zip(&other.cells)
            .all(|(a, b)| bound_le(a, b)))
    }

    /// `⟦other⟧ ⊆ ⟦self⟧`.
    pub fn includes(&self, other: &Edbm) -> Result<bool> {
        other.is_subset_of(self)
    }

    /// `⟦self⟧ \ ⟦other⟧` as a union of pairwise disjoint zones.
    pub fn subtract(&self, other: &Edbm) -> Result<ZoneSet> {
        self.check_same_clocks(other)?;
        let mut out = ZoneSet::new(self.clocks.clone());
        if self.is_empty() {
            return Ok(out);
        }
        if other.is_empty() {
            out.push(self.clone());
            return Ok(out);
        }
        let dim = self.dim();
        let mut rest = self.clone();
        for i in 0..dim {
            for j in 0..dim {
                if i == j {
                    continue;
                }
                let c = other.get(i, j);
                if *c == Bound::Free || (*c == Bound::Bottom && i == 0) {
                    continue;
                }
                if bound_le(rest.get(i, j), c) {
                    continue;
                }
                for piece in rest.violations(i, j, c) {
                    out.push(piece);
                }
                let mut next = rest.clone();
                if !next.tighten(i, j, c) {
                    return Ok(out);
                }
                rest = next.normalize();
                if rest.is_empty() {
                    return Ok(out);
                }
            }
        }
        Ok(out)
    }

    /// Disjoint pieces of `self ∧ ¬cell(i,j)`.
    fn violations(&self, i: usize, j: usize, c: &Bound) -> Vec<Edbm> {
        let mut pieces = Vec::new();
        let mut push = |m: Edbm| {
            let m = m.normalize();
            if !m.is_empty() {
                pieces.push(m);
            }
        };
        if *c == Bound::Bottom {
            let k = if i == 0 { j } else { i };
            let mut m = self.clone();
            if m.tighten(k, k, &Bound::zero_le()) {
                push(m);
            }
            return pieces;
        }
        let mut both_real = self.clone();
        for (pos, k) in [i, j].into_iter().enumerate() {
            if k == 0 {
                continue;
            }
            let mut m = both_real.clone();
            if m.set_bottom(k) {
                push(m);
            }
            if pos == 0 && !both_real.tighten(k, k, &Bound::zero_le()) {
                return pieces;
            }
        }
        if j != 0 && !both_real.tighten(j, j, &Bound::zero_le()) {
            return pieces;
        }
        if let Some(flipped) = c.complement() {
            if both_real.tighten(j, i, &flipped) {
                push(both_real);
            }
        }
        pieces
    }

    /// Constrains clock `k` to ⊥; false if that clashes with a numeric cell.
    fn set_bottom(&mut self, k: usize) -> bool {
        let dim = self.dim();
        for j in 0..dim {
            if j != 0 && (self.get(k, j).is_numeric() || self.get(j, k).is_numeric()) {
                return false;
            }
        }
        self.tighten(k, 0, &Bound::Bottom) && self.tighten(0, k, &Bound::Bottom)
    }

    /// Some valuation of the zone. ⊥ and unconstrained clocks get ⊥; real
    /// clocks are fixed in index order at the midpoint of the interval left
    /// by the bounds against `x0` and the clocks already fixed.
    pub fn sample(&self) -> Result<Valuation> {
        if self.is_empty() {
            return Err(Error::EmptyZone);
        }
        let m = self.normalize();
        if m.is_empty() {
            return Err(Error::EmptyZone);
        }
        let dim = m.dim();
        let mut signed: Vec<Option<Rational>> = vec![None; dim];
        signed[0] = Some(Rational::zero());
        for i in 1..dim {
            if !m.get(i, 0).is_numeric() {
                continue;
            }
            let mut lo: Option<(Rational, bool)> = None;
            let mut hi: Option<(Rational, bool)> = None;
            for (j, vj) in signed.iter().enumerate() {
                let Some(vj) = vj.clone() else {
                    continue;
                };
                if let Bound::Finite(c, s) = m.get(j, i) {
                    // v̂_j - v̂_i ≺ c  ⇒  v̂_i ≻ v̂_j - c
                    let cand = (
                        vj.clone() - Rational::from_integer(c.clone()),
                        *s == Strictness::Lt,
                    );
                    lo = Some(match lo {
                        Some(cur) if cur.0 > cand.0 || (cur.0 == cand.0 && cur.1) => cur,
                        _ => cand,
                    });
                }
                if let Bound::Finite(c, s) = m.get(i, j) {
                    let cand = (vj + Rational::from_integer(c.clone()), *s == Strictness::Lt);
                    hi = Some(match hi {
                        Some(cur) if cur.0 < cand.0 || (cur.0 == cand.0 && cur.1) => cur,
                        _ => cand,
                    });
                }
            }
            let one = Rational::one();
            let value = match (lo, hi) {
                (Some((l, _)), Some((h, _))) if l == h => l,
                (Some((l, _)), Some((h, _))) => (l + h) / Rational::from_integer(BigInt::from(2)),
                (Some((l, _)), None) => l + one,
                (None, Some((h, _))) => h - one,
                (None, None) => Rational::zero(),
            };
            signed[i] = Some(value);
        }
        Valuation::new(
            m.clocks
                .iter()
                .zip(signed.into_iter().skip(1))
                .map(|(x, s)| (x.clone(), s.map(|q| signed_value(x.kind, &q)))),
        )
    }

    /// Row-major cells, rows separated by ` | `.
    pub fn debug_string(&self) -> String {
        let dim = self.dim();
        (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| self.get(i, j).token())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join(" | ")
    }

    /// The nontrivial constraints of the zone in clock terms, e.g.
    /// `p.a = bot`, `p.b >= 1`, `p.b - p.a <= 1`.
    pub fn describe(&self) -> String {
        if self.is_empty() {
            return "false".into();
        }
        let dim = self.dim();
        let mut parts = Vec::new();
        for i in 1..dim {
            if *self.get(i, 0) == Bound::Bottom {
                parts.push(format!("{} = bot", self.clocks[i - 1]));
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                if i == j {
                    continue;
                }
                let b = self.get(i, j);
                let Bound::Finite(c, s) = b else { continue };
                if *b == self.real_default(i, j) {
                    continue;
                }
                parts.push(describe_cell(&self.clocks, i, j, c, *s));
            }
        }
        for i in 1..dim {
            let only_real = self.get(i, 0).is_numeric()
                && (0..dim).all(|j| {
                    let loose = |a: usize, b: usize| {
                        let c = self.get(a, b);
                        *c == Bound::Free || *c == self.real_default(a, b)
                    };
                    j == i || (loose(i, j) && loose(j, i))
                });
            if only_real {
                parts.push(format!("{} real", self.clocks[i - 1]));
            }
        }
        if parts.is_empty() {
            "true".into()
        } else {
            parts.join(" && ")
        }
    }

    /// Tightest numeric bounds `(lower, upper)` this zone places on a real
    /// clock's value, as closed/open rational endpoints.
    pub fn clock_interval(&self, x: &Clock) -> Result<Option<ClockInterval>> {
        let k = self.index_of(x)?;
        if self.is_empty() || !self.get(k, 0).is_numeric() {
            return Ok(None);
        }
        // v̂ ≤ (k,0) and -v̂ ≤ (0,k)
        let (upper_cell, lower_cell) = (self.get(k, 0), self.get(0, k));
        let to_end = |b: &Bound| match b {
            Bound::Finite(c, s) => Some((Rational::from_integer(c.clone()), *s == Strictness::Lt)),
            _ => None,
        };
        let (lower, upper) = match x.kind {
            ClockKind::History => (to_end(lower_cell).map(|(c, s)| (-c, s)), to_end(upper_cell)),
            ClockKind::Prophecy => (to_end(upper_cell).map(|(c, s)| (-c, s)), to_end(lower_cell)),
        };
        Ok(Some(ClockInterval { lower, upper }))
    }
}

/// Endpoints of a clock's range; the flag marks a strict endpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClockInterval {
    pub lower: Option<(Rational, bool)>,
    pub upper: Option<(Rational, bool)>,
}

impl fmt::Display for ClockInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.lower {
            Some((l, strict)) => write!(
                f,
                "{}{}",
                if *strict { "(" } else { "[" },
                format_rational(l)
            )?,
            None => f.write_str("(-inf")?,
        }
        f.write_str(", ")?;
        match &self.upper {
            Some((u, strict)) => write!(
                f,
                "{}{}",
                format_rational(u),
                if *strict { ")" } else { "]" }
            ),
            None => f.write_str("inf)"),
        }
    }
}

fn describe_cell(clocks: &[Clock], i: usize, j: usize, c: &BigInt, s: Strictness) -> String {
    // cell bounds v̂_i - v̂_j; rewrite as a constraint on clock values.
    let op = match s {
        Strictness::Lt => "<",
        Strictness::Le => "<=",
    };
    let flipped = match s {
        Strictness::Lt => ">",
        Strictness::Le => ">=",
    };
    match (i, j) {
        (0, j) => {
            let x = &clocks[j - 1];
            match x.kind {
                ClockKind::History => format!("{x} {flipped} {}", -c),
                ClockKind::Prophecy => format!("{x} {op} {c}"),
            }
        }
        (i, 0) => {
            let x = &clocks[i - 1];
            match x.kind {
                ClockKind::History => format!("{x} {op} {c}"),
                ClockKind::Prophecy => format!("{x} {flipped} {}", -c),
            }
        }
        (i, j) => {
            let (x, y) = (&clocks[i - 1], &clocks[j - 1]);
            match (x.kind, y.kind) {
                (ClockKind::History, ClockKind::History) => format!("{x} - {y} {op} {c}"),
                (ClockKind::Prophecy, ClockKind::Prophecy) => format!("{y} - {x} {op} {c}"),
                (ClockKind::History, ClockKind::Prophecy) => format!("{x} + {y} {op} {c}"),
                (ClockKind::Prophecy, ClockKind::History) => format!("{x} + {y} {flipped} {}", -c),
            }
        }
    }
}

/// A finite union of nonempty normalized zones over one clock list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZoneSet {
    clocks: Arc<[Clock]>,
    zones: Vec<Edbm>,
}

impl ZoneSet {
    pub fn new(clocks: Arc<[Clock]>) -> ZoneSet {
        ZoneSet {
            clocks,
            zones: Vec::new(),
        }
    }

    pub fn from_zones(clocks: Arc<[Clock]>, zones: impl IntoIterator<Item = Edbm>) -> ZoneSet {
        let mut set = ZoneSet::new(clocks);
        for z in zones {
            set.push(z);
        }
        set
    }

    /// Adds a zone (normalized on the way in); empty zones are dropped.
    pub fn push(&mut self, zone: Edbm) {
        debug_assert!(zone.clocks == self.clocks);
        let zone = zone.normalize();
        if !zone.is_empty() && !self.zones.contains(&zone) {
            self.zones.push(zone);
        }
    }

    pub fn clocks(&self) -> &Arc<[Clock]> {
        &self.clocks
    }

    pub fn zones(&self) -> &[Edbm] {
        &self.zones
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Edbm> {
        self.zones.iter()
    }

    pub fn len(&self) -> usize {
        self.zones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zones.is_empty()
    }

    pub fn contains(&self, v: &Valuation) -> Result<bool> {
        for z in &self.zones {
            if z.contains(v)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// `⟦self⟧ \ ⟦zone⟧`.
    pub fn subtract(&self, zone: &Edbm) -> Result<ZoneSet> {
        let mut out = ZoneSet::new(self.clocks.clone());
        for z in &self.zones {
            for piece in z.subtract(zone)?.zones {
                out.push(piece);
            }
        }
        Ok(out)
    }
}

impl IntoIterator for ZoneSet {
    type Item = Edbm;
    type IntoIter = std::vec::IntoIter<Edbm>;

    fn into_iter(self) -> Self::IntoIter {
        self.zones.into_iter()
    }
}

impl<'a> IntoIterator for &'a ZoneSet {
    type Item = &'a Edbm;
    type IntoIter = std::slice::Iter<'a, Edbm>;

    fn into_iter(self) -> Self::IntoIter {
        self.zones.iter()
    }
}
