//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the test fails if any criterion fails.

mod common;

use common::*;
use ecta::analysis::{backdiv_loop_zones, SymbolicState};
use ecta::automaton::{bounded_untimed_language, initial_state};
use ecta::clock::{int, rat, weak_successor_contains};
use ecta::region_automaton::{build, language_empty, state_count_bound, BuildMode, Quantifier};
use ecta::regions::weak_successor_witness;
use ecta::{
    accepts, back_exact, builtin_example, equivalent, forw_exact, mirror, Clock, Ecta, Edbm, Edge,
    Guard, Rational, RegionVariant, Symbol, TimedWord, Valuation, Verdict,
};
use num_bigint::BigUint;
use rand::Rng;
use std::collections::BTreeSet;
use std::time::{Duration, Instant};

const FIRST: &str = "<=0 bot ? ? ? | bot ? ? ? ? | <=0 ? <=0 ? ? | ? ? ? <=0 <1 | ? ? <=2 <0 <=0";
const SECOND: &str =
    "<=0 bot <inf <=0 <=0 | bot ? ? ? ? | <=0 ? <=0 <=0 <=0 | <inf ? <inf <=0 <1 | <inf ? <=2 <0 <=0";

type Outcome = Result<(), String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, started: Instant) -> Outcome {
    let spent = started.elapsed();
    check(spent <= limit, || {
        format!("took {spent:?}, limit {limit:?}")
    })
}

// 1. normalization golden test

fn normalization_golden() -> Outcome {
    let clocks: std::sync::Arc<[Clock]> = vec![
        Clock::prophecy("x1"),
        Clock::prophecy("x2"),
        Clock::history("x3"),
        Clock::history("x4"),
    ]
    .into();
    let started = Instant::now();
    let got = Edbm::parse_cells(clocks.clone(), FIRST)
        .unwrap()
        .normalize();
    let spent = started.elapsed();
    let expected = Edbm::parse_cells(clocks, SECOND).unwrap();
    check(got == expected, || {
        format!(
            "normalized to `{}`, expected `{}`",
            got.debug_string(),
            expected.debug_string()
        )
    })?;
    check(spent <= Duration::from_millis(1), || {
        format!("took {spent:?}")
    })
}

// 2. zone operations against their definitions

fn zone_operations() -> Outcome {
    let started = Instant::now();
    let clocks = ab_clocks();
    let mut rng = rng(2);
    let names = [
        "future",
        "past",
        "intersect",
        "release",
        "includes",
        "future_exact",
        "past_exact",
    ];
    // per operation: zones with a disagreement, and the first one seen
    let mut wrong_zones = [0usize; 7];
    let mut first: [Option<String>; 7] = Default::default();
    let mut zones = 0;
    while zones < 500 {
        let z = random_edbm(&mut rng, &clocks, 3);
        if z.is_empty() {
            continue;
        }
        zones += 1;
        let w = random_edbm(&mut rng, &clocks, 3);
        let x = clocks[rng.gen_range(0..clocks.len())].clone();
        let fut = z.future();
        let past = z.past();
        let fut_exact = z.future_exact();
        let past_exact = z.past_exact();
        let both = z.intersect(&w).unwrap();
        let rel = z.release(&x).unwrap();
        let mut points: Vec<Valuation> = (0..60)
            .map(|_| random_valuation(&mut rng, &clocks, 4, 5))
            .collect();
        for zz in [&z, &fut, &past, &rel] {
            points.push(zz.sample().unwrap());
        }
        let mut wrong: [Option<String>; 7] = Default::default();
        for v in &points {
            let inz = z.contains(v).unwrap();
            let (f, p) = (in_future(&z, v), in_past(&z, v));
            let verdicts = [
                (0, fut.contains(v).unwrap() == f),
                (1, past.contains(v).unwrap() == p),
                (
                    2,
                    both.contains(v).unwrap() == (inz && w.contains(v).unwrap()),
                ),
                (3, rel.contains(v).unwrap() == in_release(&z, &x, v)),
                (5, fut_exact.contains(v).unwrap() == f),
                (6, past_exact.contains(v).unwrap() == p),
            ];
            for (k, ok) in verdicts {
                if !ok && wrong[k].is_none() {
                    wrong[k] = Some(format!("{z} at {v}"));
                }
            }
        }
        // inclusion: true answers have no counterexample on the points,
        // false answers come with one
        for (big, small) in [(&z, &w), (&fut, &z), (&z, &both), (&rel, &z), (&w, &z)] {
            let ok = if big.includes(small).unwrap() {
                points
                    .iter()
                    .all(|v| !small.contains(v).unwrap() || big.contains(v).unwrap())
            } else {
                let gap = small.subtract(big).unwrap();
                gap.zones()
                    .first()
                    .map(|g| g.sample().unwrap())
                    .is_some_and(|v| small.contains(&v).unwrap() && !big.contains(&v).unwrap())
            };
            if !ok && wrong[4].is_none() {
                wrong[4] = Some(format!("{big} vs {small}"));
            }
        }
        for (k, why) in wrong.into_iter().enumerate() {
            if let Some(why) = why {
                wrong_zones[k] += 1;
                first[k].get_or_insert(why);
            }
        }
    }
    let report: Vec<String> = (0..names.len())
        .filter(|&k| wrong_zones[k] > 0)
        .map(|k| {
            format!(
                "{} wrong on {}/{zones} zones (e.g. {})",
                names[k],
                wrong_zones[k],
                first[k].as_deref().unwrap_or("")
            )
        })
        .collect();
    check(report.is_empty(), || report.join("; "))?;
    within(Duration::from_secs(60), started)
}

// 3. existential region automata recognize the untimed language

fn untime_equivalence(automata: &[(String, Ecta, u32)]) -> Outcome {
    let started = Instant::now();
    for (name, a, cmax) in automata {
        let zone_lang = bounded_untimed_language(a, &[initial_state(a)], 6).unwrap();
        for variant in [RegionVariant::Classic, RegionVariant::Refined] {
            let ra = build(a, *cmax, BuildMode::new(Quantifier::Existential, variant)).unwrap();
            let lang = ra.bounded_language(6);
            check(lang == zone_lang, || {
                format!(
                    "{name} ({variant}): region language {lang:?} vs zone language {zone_lang:?}"
                )
            })?;
        }
    }
    within(Duration::from_secs(60), started)
}

// 4. universal region automata lose words

fn theta(n: usize) -> TimedWord {
    let mut events: Vec<(Symbol, Rational)> =
        (0..n).map(|k| (Symbol::new("b"), int(k as i64))).collect();
    events.push((Symbol::new("a"), int(n as i64)));
    TimedWord::new(events).unwrap()
}

fn universal_under_approximation() -> Outcome {
    let started = Instant::now();
    let a = builtin_example("ainf").unwrap();
    for variant in [RegionVariant::Classic, RegionVariant::Refined] {
        let ra = build(&a, 1, BuildMode::new(Quantifier::Universal, variant)).unwrap();
        let lost =
            (1..=5).find(|&n| accepts(&a, &theta(n)).unwrap() && !ra.accepts(&theta(n).untime()));
        check(lost.is_some(), || {
            format!("universal {variant} accepts every bⁿa, n ≤ 5")
        })?;
    }
    within(Duration::from_secs(10), started)
}

// 5. one run from each (q0, vⁿ)

fn point_languages() -> Outcome {
    let started = Instant::now();
    let a = builtin_example("ainf").unwrap();
    let mut seen = BTreeSet::new();
    for n in 1..=6 {
        let text = format!("p.a = {n} && p.b = 0 && h.a = bot && h.b = bot");
        let start = SymbolicState::new("q0", Edbm::parse(a.clocks().clone(), &text).unwrap());
        let lang = bounded_untimed_language(&a, &[start], 8).unwrap();
        let expected: BTreeSet<Vec<Symbol>> =
            [syms(&format!("{}a", "b".repeat(n)))].into_iter().collect();
        check(lang == expected, || format!("n = {n}: {lang:?}"))?;
        check(seen.insert(lang), || format!("n = {n}: language repeats"))?;
    }
    within(Duration::from_secs(10), started)
}

// 6. backward analysis diverges

fn backward_divergence() -> Outcome {
    let started = Instant::now();
    let a = builtin_example("backdiv").unwrap();
    let verdict = back_exact(&a, 50).unwrap().verdict;
    check(verdict == Verdict::Unknown, || {
        format!("back_exact(backdiv) = {verdict}")
    })?;
    let zones = backdiv_loop_zones(&a, 10).unwrap();
    for (n, s) in zones.iter().enumerate().skip(1) {
        let bound = Edbm::parse(
            a.clocks().clone(),
            &format!("p.b >= {n} && h.a + p.b >= {}", n + 1),
        )
        .unwrap();
        check(bound.includes(&s.zone).unwrap(), || {
            format!("iteration {n}: {} not entailed", s.zone.describe())
        })?;
    }
    let verdict = forw_exact(&mirror(&a).unwrap(), 50).unwrap().verdict;
    check(verdict == Verdict::Unknown, || {
        format!("forw_exact(mirror(backdiv)) = {verdict}")
    })?;
    within(Duration::from_secs(10), started)
}

// 7. weak time successors

fn weak_successors() -> Outcome {
    let started = Instant::now();
    let clocks = ab_clocks();
    let cmax = 2;
    let mut rng = rng(7);
    let mut pairs = 0;
    let mut attempts = 0;
    while pairs < 200 {
        attempts += 1;
        check(attempts < 200_000, || {
            format!("only {pairs} equivalent pairs found")
        })?;
        let v1 = random_valuation(&mut rng, &clocks, 4, 4);
        let v2 = jitter(&mut rng, &v1, cmax);
        if !equivalent(&v1, &v2, cmax, RegionVariant::Classic).unwrap() {
            continue;
        }
        let room = v1
            .iter()
            .filter(|(x, _)| x.is_prophecy())
            .filter_map(|(_, q)| q.clone())
            .fold(int(3), |m, q| if q < m { q } else { m });
        let t1 = rat(
            rng.gen_range(
                0..=(room.clone() * int(8))
                    .floor()
                    .to_integer()
                    .try_into()
                    .unwrap_or(24),
            ),
            8,
        );
        if t1 > room {
            continue;
        }
        pairs += 1;
        let (t2, w) = weak_successor_witness(&v1, &v2, &t1, cmax)
            .map_err(|e| format!("{v1} ~ {v2}, t1 = {t1}: {e}"))?;
        let moved = v1.elapse(&t1).unwrap();
        check(
            equivalent(&moved, &w, cmax, RegionVariant::Classic).unwrap(),
            || format!("{moved} vs witness {w}"),
        )?;
        check(weak_successor_contains(&v2, &t2, &w, cmax), || {
            format!("{w} not in {v2} +w {t2}")
        })?;
    }
    within(Duration::from_secs(30), started)
}

// 8. size bound

fn size_bound(automata: &[(String, Ecta, u32)]) -> Outcome {
    for (name, a, cmax) in automata {
        for variant in [RegionVariant::Classic, RegionVariant::Refined] {
            let ra = build(a, *cmax, BuildMode::new(Quantifier::Existential, variant)).unwrap();
            let bound = state_count_bound(a, *cmax);
            check(BigUint::from(ra.states().len()) <= bound, || {
                format!("{name} ({variant}): {} states > {bound}", ra.states().len())
            })?;
        }
    }
    Ok(())
}

// 9. the exact searches agree with the region method

fn method_agreement(automata: &[(String, Ecta, u32)]) -> Outcome {
    let started = Instant::now();
    let mut decided = 0;
    for (name, a, cmax) in automata {
        let empty = language_empty(a, *cmax).unwrap();
        for (method, result) in [
            ("forward", forw_exact(a, 2000)),
            ("backward", back_exact(a, 2000)),
        ] {
            match result.unwrap().verdict {
                Verdict::Unknown => {}
                v => {
                    decided += 1;
                    check((v == Verdict::Empty) == empty, || {
                        format!("{name}: {method} says {v}, region method says empty = {empty}")
                    })?;
                }
            }
        }
    }
    check(decided > 0, || "no search terminated".into())?;
    within(Duration::from_secs(60), started)
}

fn fixtures() -> Vec<(String, Ecta, u32)> {
    let mut out = Vec::new();
    let ainf = builtin_example("ainf").unwrap();
    let backdiv = builtin_example("backdiv").unwrap();
    out.push(("mirror(backdiv)".to_string(), mirror(&backdiv).unwrap(), 1));
    out.push(("ainf".to_string(), ainf, 1));
    out.push(("backdiv".to_string(), backdiv, 1));
    let single = Ecta::new(
        ecta::Alphabet::new(["a"]).unwrap(),
        ["q0", "q1"],
        "q0",
        ["q1"],
        vec![Edge::new("q0", "a", Guard::True, "q1")],
    )
    .unwrap();
    out.push(("single".to_string(), single, 0));
    out
}

fn random_fixtures(count: usize) -> Vec<(String, Ecta, u32)> {
    let mut rng = rng(3);
    (0..count)
        .map(|k| {
            let cmax = rng.gen_range(0..=2);
            let a = random_ecta(&mut rng, 3, cmax);
            (format!("random #{k}"), a, cmax)
        })
        .collect()
}

type Criterion<'a> = (&'a str, Box<dyn Fn() -> Outcome + 'a>);

#[test]
fn acceptance_criteria() {
    let mut untime_set = vec![("ainf".to_string(), builtin_example("ainf").unwrap(), 1)];
    untime_set.extend(random_fixtures(6));
    let mut all = fixtures();
    all.extend(random_fixtures(6));

    let criteria: Vec<Criterion> = vec![
        (
            "1 normalization golden matrix",
            Box::new(normalization_golden),
        ),
        (
            "2 zone operations match their definitions",
            Box::new(zone_operations),
        ),
        (
            "3 existential region automata recognize the untimed language",
            Box::new(|| untime_equivalence(&untime_set)),
        ),
        (
            "4 universal region automata miss some bⁿa",
            Box::new(universal_under_approximation),
        ),
        ("5 single run from each (q0, vⁿ)", Box::new(point_languages)),
        (
            "6 backward search diverges on backdiv",
            Box::new(backward_divergence),
        ),
        ("7 weak time successor witnesses", Box::new(weak_successors)),
        (
            "8 region automaton size bound",
            Box::new(|| size_bound(&all)),
        ),
        (
            "9 zone searches agree with the region method",
            Box::new(|| method_agreement(&all)),
        ),
    ];
    let mut failed = Vec::new();
    for (name, run) in &criteria {
        let started = Instant::now();
        let outcome = run();
        let spent = started.elapsed();
        match outcome {
            Ok(()) => println!("PASS criterion {name} ({spent:.2?})"),
            Err(why) => {
                println!("FAIL criterion {name} ({spent:.2?}): {why}");
                failed.push(*name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
