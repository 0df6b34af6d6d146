use crate::Failure;
use ecta::analysis::backdiv_loop_zones;
use ecta::automaton::{accepts, bounded_untimed_language};
use ecta::{
    back_exact, build, builtin_example, forw_exact, mirror, BuildMode, Clock, Edbm, Quantifier,
    RegionVariant, Symbol, SymbolicState, TimedWord, Verdict,
};
use serde_json::{json, Value};
use std::collections::BTreeSet;

/// Collects `PASS ...` / `FAIL ...` lines.
struct Report {
    name: &'static str,
    lines: Vec<String>,
    failed: bool,
}

impl Report {
    fn new(name: &'static str) -> Report {
        Report {
            name,
            lines: Vec::new(),
            failed: false,
        }
    }

    fn line(&mut self, ok: bool, text: String) {
        self.failed |= !ok;
        self.lines
            .push(format!("{} {text}", if ok { "PASS" } else { "FAIL" }));
    }

    fn finish(self) -> Result<Value, Failure> {
        let v = json!({
            "command": "demo",
            "name": self.name,
            "check": self.lines,
            "passed": !self.failed,
        });
        if self.failed {
            Err(Failure::Check(v))
        } else {
            Ok(v)
        }
    }
}

pub fn run(name: &str) -> Result<Value, Failure> {
    match name {
        "ainf" => ainf(),
        "backdiv" => backdiv(),
        "forwdiv" => forwdiv(),
        other => Err(Failure::Input(format!(
            "unknown demo `{other}` (expected ainf, backdiv or forwdiv)"
        ))),
    }
}

fn show(words: &BTreeSet<Vec<Symbol>>) -> String {
    let words: Vec<String> = words
        .iter()
        .map(|w| w.iter().map(Symbol::as_str).collect())
        .collect();
    format!("{{{}}}", words.join(", "))
}

/// `b` at times `0..n`, then `a`.
fn theta(n: usize) -> TimedWord {
    let mut events: Vec<(Symbol, ecta::Rational)> = (0..n)
        .map(|k| (Symbol::new("b"), ecta::clock::int(k as i64)))
        .collect();
    events.push((Symbol::new("a"), ecta::clock::int(n as i64)));
    TimedWord::new(events).expect("increasing times")
}

fn ainf() -> Result<Value, Failure> {
    let a = builtin_example("ainf")?;
    let mut report = Report::new("ainf");
    let mut seen = BTreeSet::new();
    for n in 1..=6 {
        let zone = Edbm::parse(
            a.clocks().clone(),
            &format!("p.a = {n} && p.b = 0 && h.a = bot && h.b = bot"),
        )?;
        let lang = bounded_untimed_language(&a, &[SymbolicState::new("q0", zone)], 8)?;
        let expected: Vec<Symbol> = std::iter::repeat_n(Symbol::new("b"), n)
            .chain([Symbol::new("a")])
            .collect();
        let single = lang.len() == 1 && lang.contains(&expected);
        let fresh = seen.insert(lang.clone());
        report.line(
            single && fresh,
            format!(
                "from p.a={n}, p.b=0: words up to length 8 = {}",
                show(&lang)
            ),
        );
    }
    for variant in [RegionVariant::Classic, RegionVariant::Refined] {
        let ra = build(&a, 1, BuildMode::new(Quantifier::Universal, variant))?;
        let mut lost = None;
        for n in 1..=5 {
            if accepts(&a, &theta(n))? && !ra.accepts(&theta(n).untime()) {
                lost = Some(n);
                break;
            }
        }
        let text = match lost {
            Some(n) => format!("universal {variant} region automaton rejects b^{n}a"),
            None => format!("universal {variant} region automaton accepts every b^na, n <= 5"),
        };
        report.line(lost.is_some(), text);
    }
    report.finish()
}

fn backdiv() -> Result<Value, Failure> {
    let a = builtin_example("backdiv")?;
    let mut report = Report::new("backdiv");
    let r = back_exact(&a, 50)?;
    report.line(
        r.verdict == Verdict::Unknown,
        format!(
            "backward search with fuel 50: {} after {} steps",
            r.verdict, r.steps_used
        ),
    );
    let pb = Clock::prophecy(Symbol::new("b"));
    let zones = backdiv_loop_zones(&a, 10)?;
    for (n, s) in zones.iter().enumerate().skip(1) {
        let bound = Edbm::parse(
            a.clocks().clone(),
            &format!("p.b >= {n} && h.a + p.b >= {}", n + 1),
        )?;
        let low = s
            .zone
            .clock_interval(&pb)?
            .map(|iv| iv.to_string())
            .unwrap_or_else(|| "bot".into());
        report.line(
            bound.includes(&s.zone)?,
            format!(
                "iteration {n}: p.b in {low}, entails p.b >= {n} and h.a + p.b >= {}",
                n + 1
            ),
        );
    }
    report.finish()
}

fn forwdiv() -> Result<Value, Failure> {
    let a = mirror(&builtin_example("backdiv")?)?;
    let mut report = Report::new("forwdiv");
    for fuel in [50, 200] {
        let r = forw_exact(&a, fuel)?;
        report.line(
            r.verdict == Verdict::Unknown,
            format!(
                "forward search on the mirrored automaton with fuel {fuel}: {} after {} steps",
                r.verdict, r.steps_used
            ),
        );
    }
    report.finish()
}
