//! Region equivalences over event clocks.
//!
//! `Classic` is the Alur-Dill equivalence (clock classes, integer parts,
//! order of fractional parts); `Refined` adds diagonal classes for pairs
//! involving a clock above `cmax`.

use crate::clock::{
    clock_frac, format_rational, int, signed_value, Clock, ClockKind, Rational, Valuation,
};
use crate::edbm::{Bound, Edbm};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RegionVariant {
    Classic,
    Refined,
}

impl fmt::Display for RegionVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RegionVariant::Classic => "classic",
            RegionVariant::Refined => "refined",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClockClass {
    Bot,
    /// `int_part` when `frac_zero`, otherwise the open interval above it.
    Bounded {
        int_part: u32,
        frac_zero: bool,
    },
    Above,
}

/// Class of `v̂(x) - v̂(y)` for a pair with at least one clock above `cmax`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Diagonal {
    FarBelow,
    Near { floor: i64, integer: bool },
    FarAbove,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Region {
    variant: RegionVariant,
    cmax: u32,
    clocks: Arc<[Clock]>,
    classes: Vec<ClockClass>,
    /// Clocks with a nonzero fractional part, grouped by equal `⟨x⟩`, in
    /// ascending order.
    frac_order: Vec<Vec<usize>>,
    /// Refined only: `(i, j)` with `i < j`, classifying `v̂(x_i) - v̂(x_j)`.
    diagonals: Vec<((usize, usize), Diagonal)>,
}

fn diagonal_of(d: &Rational, cmax: u32) -> Diagonal {
    let bound = int(2 * cmax as i64);
    if *d > bound {
        Diagonal::FarAbove
    } else if *d < -bound {
        Diagonal::FarBelow
    } else {
        Diagonal::Near {
            floor: d.floor().to_integer().to_i64().expect("small diagonal"),
            integer: d.is_integer(),
        }
    }
}

fn class_of(value: &Option<Rational>, cmax: u32) -> ClockClass {
    match value {
        None => ClockClass::Bot,
        Some(q) if *q > int(cmax as i64) => ClockClass::Above,
        Some(q) => ClockClass::Bounded {
            int_part: q.floor().to_integer().to_u32().expect("bounded clock"),
            frac_zero: q.is_integer(),
        },
    }
}

impl Region {
    pub fn variant(&self) -> RegionVariant {
        self.variant
    }

    pub fn cmax(&self) -> u32 {
        self.cmax
    }

    pub fn clocks(&self) -> &Arc<[Clock]> {
        &self.clocks
    }

    pub fn class(&self, x: &Clock) -> Option<ClockClass> {
        self.clocks
            .iter()
            .position(|c| c == x)
            .map(|i| self.classes[i])
    }

    pub fn classes(&self) -> impl Iterator<Item = (&Clock, ClockClass)> {
        self.clocks.iter().zip(self.classes.iter().copied())
    }

    pub fn frac_order(&self) -> Vec<Vec<Clock>> {
        self.frac_order
            .iter()
            .map(|g| g.iter().map(|&i| self.clocks[i].clone()).collect())
            .collect()
    }

    pub fn diagonals(&self) -> Vec<(Clock, Clock, Diagonal)> {
        self.diagonals
            .iter()
            .map(|&((i, j), d)| (self.clocks[i].clone(), self.clocks[j].clone(), d))
            .collect()
    }

    /// Every history clock is ⊥.
    pub fn is_initial(&self) -> bool {
        self.classes()
            .all(|(x, c)| x.is_prophecy() || c == ClockClass::Bot)
    }

    /// Every prophecy clock is ⊥.
    pub fn is_final(&self) -> bool {
        self.classes()
            .all(|(x, c)| x.is_history() || c == ClockClass::Bot)
    }

    /// The zone of all valuations in this region.
    pub fn to_zone(&self) -> Edbm {
        let mut m = Edbm::unconstrained(self.clocks.clone());
        let cmax = BigInt::from(self.cmax);
        let mut base: Vec<i64> = vec![0; self.clocks.len() + 1];
        for (k, (x, class)) in self.classes().enumerate() {
            let i = k + 1;
            match (class, x.kind) {
                (ClockClass::Bot, _) => {
                    m.set(i, 0, Bound::Bottom);
                    m.set(0, i, Bound::Bottom);
                }
                (ClockClass::Above, ClockKind::History) => {
                    m.set(
                        0,
                        i,
                        Bound::Finite(-cmax.clone(), crate::edbm::Strictness::Lt),
                    );
                }
                (ClockClass::Above, ClockKind::Prophecy) => {
                    m.set(
                        i,
                        0,
                        Bound::Finite(-cmax.clone(), crate::edbm::Strictness::Lt),
                    );
                }
                (
                    ClockClass::Bounded {
                        int_part,
                        frac_zero: true,
                    },
                    kind,
                ) => {
                    let s = signed_int(kind, int_part as i64);
                    m.set(i, 0, Bound::le(s));
                    m.set(0, i, Bound::le(-s));
                }
                (
                    ClockClass::Bounded {
                        int_part,
                        frac_zero: false,
                    },
                    kind,
                ) => {
                    // v̂ ∈ (a, a+1)
                    let a = match kind {
                        ClockKind::History => int_part as i64,
                        ClockKind::Prophecy => -(int_part as i64) - 1,
                    };
                    base[i] = a;
                    m.set(i, 0, Bound::lt(a + 1));
                    m.set(0, i, Bound::lt(-a));
                }
            }
        }
        // ⟨x⟩ = 1 - (v̂x - a_x) for open clocks
        for group in &self.frac_order {
            let x = group[0] + 1;
            for &other in &group[1..] {
                let y = other + 1;
                m.set(x, y, Bound::le(base[x] - base[y]));
                m.set(y, x, Bound::le(base[y] - base[x]));
            }
        }
        for pair in self.frac_order.windows(2) {
            let (x, y) = (pair[0][0] + 1, pair[1][0] + 1);
            // ⟨x⟩ < ⟨y⟩  ⇔  v̂y - v̂x < a_y - a_x
            m.set(y, x, Bound::lt(base[y] - base[x]));
        }
        let two_c = 2 * self.cmax as i64;
        for &((i, j), d) in &self.diagonals {
            let (x, y) = (i + 1, j + 1);
            match d {
                Diagonal::FarAbove => m.set(y, x, Bound::lt(-two_c)),
                Diagonal::FarBelow => m.set(x, y, Bound::lt(-two_c)),
                Diagonal::Near {
                    floor,
                    integer: true,
                } => {
                    m.set(x, y, Bound::le(floor));
                    m.set(y, x, Bound::le(-floor));
                }
                Diagonal::Near {
                    floor,
                    integer: false,
                } => {
                    m.set(x, y, Bound::lt(floor + 1));
                    m.set(y, x, Bound::lt(-floor));
                }
            }
        }
        m.normalize()
    }

    /// A valuation of the region.
    pub fn sample(&self) -> Result<Valuation> {
        self.to_zone().sample()
    }
}

fn signed_int(kind: ClockKind, k: i64) -> i64 {
    match kind {
        ClockKind::History => k,
        ClockKind::Prophecy => -k,
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .classes()
            .map(|(x, c)| match c {
                ClockClass::Bot => format!("{x}=bot"),
                ClockClass::Bounded {
                    int_part,
                    frac_zero: true,
                } => format!("{x}={int_part}"),
                ClockClass::Bounded {
                    int_part,
                    frac_zero: false,
                } => {
                    format!("{x}∈({int_part},{})", int_part + 1)
                }
                ClockClass::Above => format!("{x}>{}", self.cmax),
            })
            .collect();
        f.write_str(&parts.join(" "))?;
        if self.frac_order.len() > 1 {
            let groups: Vec<String> = self
                .frac_order
                .iter()
                .map(|g| {
                    g.iter()
                        .map(|&i| self.clocks[i].to_string())
                        .collect::<Vec<_>>()
                        .join("=")
                })
                .collect();
            write!(f, " | frac {}", groups.join("<"))?;
        } else if let Some(g) = self.frac_order.first() {
            if g.len() > 1 {
                let names: Vec<String> = g.iter().map(|&i| self.clocks[i].to_string()).collect();
                write!(f, " | frac {}", names.join("="))?;
            }
        }
        if !self.diagonals.is_empty() {
            let two_c = 2 * self.cmax;
            let diags: Vec<String> = self
                .diagonals
                .iter()
                .map(|&((i, j), d)| {
                    let (x, y) = (&self.clocks[i], &self.clocks[j]);
                    match d {
                        Diagonal::FarAbove => format!("d({x},{y})>{two_c}"),
                        Diagonal::FarBelow => format!("d({x},{y})<-{two_c}"),
                        Diagonal::Near {
                            floor,
                            integer: true,
                        } => format!("d({x},{y})={floor}"),
                        Diagonal::Near {
                            floor,
                            integer: false,
                        } => {
                            format!("d({x},{y})∈({floor},{})", floor + 1)
                        }
                    }
                })
                .collect();
            write!(f, " | {}", diags.join(" "))?;
        }
        Ok(())
    }
}

/// The region of `v`, over `v`'s clocks in their natural order.
pub fn region_of(v: &Valuation, cmax: u32, variant: RegionVariant) -> Region {
    let clocks: Arc<[Clock]> = v.clocks().cloned().collect();
    region_in(&clocks, v, cmax, variant).expect("clocks taken from the valuation")
}

/// The region of `v` over an explicit clock list.
pub fn region_in(
    clocks: &Arc<[Clock]>,
    v: &Valuation,
    cmax: u32,
    variant: RegionVariant,
) -> Result<Region> {
    if v.len() != clocks.len() {
        return Err(Error::ClockMismatch);
    }
    let values: Vec<Option<Rational>> = clocks
        .iter()
        .map(|x| v.value(x).map(|q| q.cloned()))
        .collect::<Result<_>>()?;
    let classes: Vec<ClockClass> = values.iter().map(|q| class_of(q, cmax)).collect();

    let mut open: Vec<(Rational, usize)> = classes
        .iter()
        .enumerate()
        .filter(|(_, c)| {
            matches!(
                c,
                ClockClass::Bounded {
                    frac_zero: false,
                    ..
                }
            )
        })
        .map(|(i, _)| {
            let q = values[i].as_ref().expect("bounded clock");
            (clock_frac(clocks[i].kind, q), i)
        })
        .collect();
    open.sort();
    let mut frac_order: Vec<Vec<usize>> = Vec::new();
    let mut last: Option<Rational> = None;
    for (fr, i) in open {
        if last.as_ref() == Some(&fr) {
            frac_order.last_mut().expect("group").push(i);
        } else {
            frac_order.push(vec![i]);
            last = Some(fr);
        }
    }

    let mut diagonals = Vec::new();
    if variant == RegionVariant::Refined {
        for i in 0..clocks.len() {
            for j in (i + 1)..clocks.len() {
                if classes[i] != ClockClass::Above && classes[j] != ClockClass::Above {
                    continue;
                }
                let (Some(a), Some(b)) = (&values[i], &values[j]) else {
                    continue;
                };
                let d = signed_value(clocks[i].kind, a) - signed_value(clocks[j].kind, b);
                diagonals.push(((i, j), diagonal_of(&d, cmax)));
            }
        }
    }
    Ok(Region {
        variant,
        cmax,
        clocks: clocks.clone(),
        classes,
        frac_order,
        diagonals,
    })
}

/// Clause-by-clause region equivalence.
///
/// For `Refined`, two differences both beyond `2·cmax` in absolute value are
/// only identified when they lie on the same side.
pub fn equivalent(
    v1: &Valuation,
    v2: &Valuation,
    cmax: u32,
    variant: RegionVariant,
) -> Result<bool> {
    if !v1.same_domain(v2) {
        return Err(Error::ClockMismatch);
    }
    let c = int(cmax as i64);
    let entries: Vec<(&Clock, &Option<Rational>, &Option<Rational>)> = v1
        .iter()
        .zip(v2.iter())
        .map(|((x, a), (_, b))| (x, a, b))
        .collect();
    for &(_, a, b) in &entries {
        match (a, b) {
            (None, None) => {}
            (Some(p), Some(q)) => {
                let both_above = *p > c && *q > c;
                let same_cell = p.ceil() == q.ceil() && p.floor() == q.floor();
                if !both_above && !same_cell {
                    return Ok(false);
                }
            }
            _ => return Ok(false),
        }
    }
    for &(x1, a1, b1) in &entries {
        for &(x2, a2, b2) in &entries {
            let (Some(p1), Some(p2), Some(q1), Some(q2)) = (a1, a2, b1, b2) else {
                continue;
            };
            if *p1 <= c && *p2 <= c {
                let lhs = clock_frac(x1.kind, p1) <= clock_frac(x2.kind, p2);
                let rhs = clock_frac(x1.kind, q1) <= clock_frac(x2.kind, q2);
                if lhs != rhs {
                    return Ok(false);
                }
            }
            if variant == RegionVariant::Refined && (*p1 > c || *p2 > c) {
                let d1 = signed_value(x1.kind, p1) - signed_value(x2.kind, p2);
                let d2 = signed_value(x1.kind, q1) - signed_value(x2.kind, q2);
                let bound = int(2 * cmax as i64);
                let far = (d1 > bound && d2 > bound) || (d1 < -bound.clone() && d2 < -bound);
                let near = d1.floor() == d2.floor() && d1.ceil() == d2.ceil();
                if !far && !near {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

pub fn region_to_zone(r: &Region) -> Edbm {
    r.to_zone()
}

/// All regions meeting `zone`, sorted.
pub fn decompose(zone: &Edbm, cmax: u32, variant: RegionVariant) -> Result<Vec<Region>> {
    let clocks = zone.clocks().clone();
    let mut found: BTreeSet<Region> = BTreeSet::new();
    let mut work = vec![zone.normalize()];
    while let Some(piece) = work.pop() {
        if piece.is_empty() {
            continue;
        }
        let v = piece.sample()?;
        let r = region_in(&clocks, &v, cmax, variant)?;
        let rz = r.to_zone();
        debug_assert!(rz.contains(&v).unwrap_or(false));
        work.extend(piece.subtract(&rz)?);
        found.insert(r);
    }
    Ok(found.into_iter().collect())
}

/// Regions whose history clocks are all ⊥.
pub fn initial_regions(
    clocks: &Arc<[Clock]>,
    cmax: u32,
    variant: RegionVariant,
) -> Result<Vec<Region>> {
    decompose(&initial_zone(clocks), cmax, variant)
}

/// Every history clock ⊥.
pub fn initial_zone(clocks: &Arc<[Clock]>) -> Edbm {
    bottom_zone(clocks, ClockKind::History)
}

/// Every prophecy clock ⊥.
pub fn final_zone(clocks: &Arc<[Clock]>) -> Edbm {
    bottom_zone(clocks, ClockKind::Prophecy)
}

fn bottom_zone(clocks: &Arc<[Clock]>, kind: ClockKind) -> Edbm {
    let mut m = Edbm::unconstrained(clocks.clone());
    for (k, x) in clocks.iter().enumerate() {
        if x.kind == kind {
            m.set(k + 1, 0, Bound::Bottom);
            m.set(0, k + 1, Bound::Bottom);
        }
    }
    m.normalize()
}

/// Given `v1 ≅ v2` (classic) and a delay `t1`, finds `t2` and
/// `v' ∈ v2 +_w t2` with `v1 + t1 ≅ v'`, stepping region boundary by
/// region boundary.
pub fn weak_successor_witness(
    v1: &Valuation,
    v2: &Valuation,
    t1: &Rational,
    cmax: u32,
) -> Result<(Rational, Valuation)> {
    if !equivalent(v1, v2, cmax, RegionVariant::Classic)? {
        return Err(Error::NotEquivalent);
    }
    let target = v1.elapse(t1)?;
    let clocks: Vec<Clock> = v1.clocks().cloned().collect();
    let c = int(cmax as i64);
    let half = Rational::new(1.into(), 2.into());

    let mut u1: Vec<Option<Rational>> = clocks
        .iter()
        .map(|x| v1.value(x).unwrap().cloned())
        .collect();
    let mut u2: Vec<Option<Rational>> = clocks
        .iter()
        .map(|x| v2.value(x).unwrap().cloned())
        .collect();
    let mut remaining = t1.clone();
    let mut t2 = Rational::zero();

    let is_bounded = |q: &Rational| *q <= c;
    let above_prophecy = |k: usize, u: &[Option<Rational>]| {
        clocks[k].is_prophecy() && u[k].as_ref().is_some_and(|q| *q > c)
    };

    while remaining > Rational::zero() {
        let frac = |u: &[Option<Rational>], k: usize| {
            u[k].as_ref()
                .filter(|q| is_bounded(q))
                .map(|q| clock_frac(clocks[k].kind, q))
        };
        let on_integer = (0..clocks.len()).any(|k| frac(&u1, k).is_some_and(|f| f.is_zero()));
        // time until u1 leaves its current open region
        let mut m1: Option<Rational> = None;
        let consider = |cand: Rational, m: &mut Option<Rational>| {
            if m.as_ref().is_none_or(|cur| cand < *cur) {
                *m = Some(cand);
            }
        };
        for k in 0..clocks.len() {
            if let Some(f) = frac(&u1, k) {
                consider(if f.is_zero() { int(1) } else { f }, &mut m1);
            }
            if above_prophecy(k, &u1) {
                consider(u1[k].clone().unwrap() - &c, &mut m1);
            }
        }
        let m1 = m1.unwrap_or_else(|| int(1));
        let min_open2 = (0..clocks.len())
            .filter_map(|k| frac(&u2, k))
            .filter(|f| !f.is_zero())
            .min();

        let (d1, d2) = if on_integer {
            let d1 = if remaining < &m1 * &half {
                remaining.clone()
            } else {
                &m1 * &half
            };
            let d2 = min_open2.map_or(half.clone(), |f| f * &half);
            (d1, d2)
        } else if remaining < m1 {
            // v1 stays in its region for the rest of the delay
            break;
        } else {
            let group = (0..clocks.len()).find(|&k| frac(&u1, k).as_ref() == Some(&m1));
            let d2 = match group {
                Some(k) => frac(&u2, k).expect("equivalent bounded clock"),
                None => min_open2.map_or(half.clone(), |f| f * &half),
            };
            (m1.clone(), d2)
        };
        for k in 0..clocks.len() {
            if above_prophecy(k, &u1) {
                let after = u1[k].clone().unwrap() - &d1;
                u2[k] = Some(if after == c {
                    &c + &d2
                } else {
                    &c + &d2 + int(1)
                });
            }
        }
        for k in 0..clocks.len() {
            for (u, d) in [(&mut u1, &d1), (&mut u2, &d2)] {
                if let Some(q) = u[k].as_mut() {
                    *q = match clocks[k].kind {
                        ClockKind::History => &*q + d,
                        ClockKind::Prophecy => &*q - d,
                    };
                }
            }
        }
        remaining -= &d1;
        t2 += &d2;
    }

    let result = Valuation::new(clocks.iter().cloned().zip(u2))?;
    if equivalent(&target, &result, cmax, RegionVariant::Classic)?
        && crate::clock::weak_successor_contains(v2, &t2, &result, cmax)
    {
        Ok((t2, result))
    } else {
        Err(Error::NotFound(format!(
            "no weak successor found for delay {}",
            format_rational(t1)
        )))
    }
}
