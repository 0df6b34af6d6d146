#![allow(dead_code)]

use ecta::clock::{int, rat};
use ecta::{
    region_of, Alphabet, Bound, Clock, ClockClass, Ecta, Edbm, Edge, Guard, Rational,
    RegionVariant, Symbol, Valuation,
};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ab_clocks() -> Arc<[Clock]> {
    Alphabet::new(["a", "b"]).unwrap().clocks()
}

pub fn syms(w: &str) -> Vec<Symbol> {
    w.chars().map(|c| Symbol::new(c.to_string())).collect()
}

/// `⊥` or a multiple of `1/den` in `[0, max]`.
pub fn random_value(rng: &mut ChaCha8Rng, den: i64, max: i64) -> Option<Rational> {
    if rng.gen_ratio(1, 6) {
        None
    } else {
        Some(rat(rng.gen_range(0..=den * max), den))
    }
}

pub fn random_valuation(rng: &mut ChaCha8Rng, clocks: &[Clock], den: i64, max: i64) -> Valuation {
    Valuation::new(
        clocks
            .iter()
            .map(|x| (x.clone(), random_value(rng, den, max))),
    )
    .unwrap()
}

/// Multiples of `1/den` in `[0, max]`.
pub fn steps(den: i64, max: i64) -> Vec<Rational> {
    (0..=den * max).map(|k| rat(k, den)).collect()
}

/// A random matrix over `clocks` with constants in `[-c, c]`, normalized.
/// Can come out empty.
pub fn random_edbm(rng: &mut ChaCha8Rng, clocks: &Arc<[Clock]>, c: i64) -> Edbm {
    random_raw_edbm(rng, clocks, c).normalize()
}

/// Random cells, not normalized.
pub fn random_raw_edbm(rng: &mut ChaCha8Rng, clocks: &Arc<[Clock]>, c: i64) -> Edbm {
    let dim = clocks.len() + 1;
    let mut m = Edbm::unconstrained(clocks.clone());
    let touched = rng.gen_range(0..=4);
    for _ in 0..touched {
        let i = rng.gen_range(0..dim);
        let j = rng.gen_range(0..dim);
        if i == j {
            continue;
        }
        let b = if (i == 0 || j == 0) && rng.gen_ratio(1, 5) {
            let k = i.max(j);
            m.set(k, 0, Bound::Bottom);
            m.set(0, k, Bound::Bottom);
            continue;
        } else if rng.gen_ratio(1, 8) {
            Bound::Infinity
        } else {
            let k = rng.gen_range(-c..=c);
            if rng.gen_bool(0.5) {
                Bound::lt(k)
            } else {
                Bound::le(k)
            }
        };
        m.set(i, j, b);
    }
    m
}

/// Like [`random_edbm`] but retries until nonempty.
pub fn random_nonempty_edbm(rng: &mut ChaCha8Rng, clocks: &Arc<[Clock]>, c: i64) -> Edbm {
    loop {
        let m = random_edbm(rng, clocks, c);
        if !m.is_empty() {
            return m;
        }
    }
}

pub fn random_guard(rng: &mut ChaCha8Rng, clocks: &[Clock], cmax: u32, depth: u32) -> Guard {
    let roll = if depth == 0 { 0 } else { rng.gen_range(0..6) };
    match roll {
        0..=2 => {
            if rng.gen_ratio(1, 8) {
                return Guard::True;
            }
            let x = clocks.choose(rng).unwrap().clone();
            let op = [ecta::CmpOp::Lt, ecta::CmpOp::Eq, ecta::CmpOp::Gt][rng.gen_range(0..3)];
            Guard::atom(x, op, rng.gen_range(0..=cmax))
        }
        3 => Guard::not(random_guard(rng, clocks, cmax, depth - 1)),
        4 => Guard::and(
            random_guard(rng, clocks, cmax, depth - 1),
            random_guard(rng, clocks, cmax, depth - 1),
        ),
        _ => Guard::or(
            random_guard(rng, clocks, cmax, depth - 1),
            random_guard(rng, clocks, cmax, depth - 1),
        ),
    }
}

/// A random automaton over `{a, b}` with up to `max_locs` locations and
/// guard constants up to `cmax`.
pub fn random_ecta(rng: &mut ChaCha8Rng, max_locs: usize, cmax: u32) -> Ecta {
    let alphabet = Alphabet::new(["a", "b"]).unwrap();
    let clocks = alphabet.clocks();
    let n = rng.gen_range(1..=max_locs);
    let locs: Vec<String> = (0..n).map(|k| format!("q{k}")).collect();
    let mut accepting: Vec<String> = locs
        .iter()
        .filter(|_| rng.gen_ratio(1, 2))
        .cloned()
        .collect();
    if accepting.is_empty() {
        accepting.push(locs[n - 1].clone());
    }
    let mut edges = Vec::new();
    for _ in 0..rng.gen_range(1..=4) {
        let from = locs.choose(rng).unwrap().clone();
        let to = locs.choose(rng).unwrap().clone();
        let letter = ["a", "b"][rng.gen_range(0..2)];
        edges.push(Edge::new(
            from,
            letter,
            random_guard(rng, &clocks, cmax, 2),
            to,
        ));
    }
    Ecta::new(alphabet, locs.clone(), locs[0].clone(), accepting, edges).unwrap()
}

/// Does some `t` on the `1/8` grid in `[0, 6]` satisfy `pred`?
pub fn exists_delay(pred: impl FnMut(&Rational) -> bool) -> bool {
    steps(8, 6).iter().any(pred)
}

pub fn zero() -> Rational {
    int(0)
}

/// `u` with `u + t = v`, if it exists.
pub fn rewind(v: &Valuation, t: &Rational) -> Option<Valuation> {
    let mut u = v.clone();
    for (x, q) in v.iter() {
        if let Some(q) = q {
            let back = if x.is_history() { q - t } else { q + t };
            if back < int(0) {
                return None;
            }
            u = u.with(x, Some(back)).unwrap();
        }
    }
    Some(u)
}

/// `v` is `u + t` for some `u ∈ z`.
pub fn in_future(z: &Edbm, v: &Valuation) -> bool {
    exists_delay(|t| rewind(v, t).is_some_and(|u| z.contains(&u).unwrap()))
}

/// `v + t ∈ z` for some `t`.
pub fn in_past(z: &Edbm, v: &Valuation) -> bool {
    exists_delay(|t| v.elapse(t).is_ok_and(|u| z.contains(&u).unwrap()))
}

/// `v[x := d] ∈ z` for some `d`, ⊥ included.
pub fn in_release(z: &Edbm, x: &Clock, v: &Valuation) -> bool {
    std::iter::once(None)
        .chain(steps(8, 10).into_iter().map(Some))
        .any(|d| z.contains(&v.with(x, d).unwrap()).unwrap())
}

/// The zone holding exactly `v`.
pub fn point_zone(clocks: &Arc<[Clock]>, v: &Valuation) -> Option<Edbm> {
    let mut parts = Vec::new();
    for (x, q) in v.iter() {
        match q {
            None => parts.push(format!("{x} = bot")),
            Some(q) if q.is_integer() => parts.push(format!("{x} = {}", q.to_integer())),
            Some(_) => return None,
        }
    }
    Some(Edbm::parse(clocks.clone(), &parts.join(" && ")).unwrap())
}

/// A random valuation in the classic region of `v`: same ⊥ pattern, same
/// integer parts, fresh fractional parts in the same order. Falls back to
/// `v` itself if rejection sampling keeps missing.
pub fn jitter(rng: &mut ChaCha8Rng, v: &Valuation, cmax: u32) -> Valuation {
    let r = region_of(v, cmax, RegionVariant::Classic);
    for _ in 0..500 {
        let mut out = v.clone();
        for (x, class) in r.classes() {
            let value = match class {
                ClockClass::Bot => None,
                ClockClass::Above => Some(int(cmax as i64) + rat(rng.gen_range(1..=48), 16)),
                ClockClass::Bounded {
                    frac_zero: true, ..
                } => v.value(x).unwrap().cloned(),
                ClockClass::Bounded { .. } => {
                    let q = v.value(x).unwrap().unwrap();
                    Some(q.floor() + rat(rng.gen_range(1..16), 16))
                }
            };
            out = out.with(x, value).unwrap();
        }
        if region_of(&out, cmax, RegionVariant::Classic) == r {
            return out;
        }
    }
    v.clone()
}
