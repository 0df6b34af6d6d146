//! Event-clock automata and their timed semantics.

use crate::analysis::{post_edge, SymbolicState};
use crate::clock::{
    format_rational, int, parse_rational, Alphabet, Clock, ClockValue, Rational, Symbol, Valuation,
};
use crate::edbm::Edbm;
use crate::error::{Error, Result};
use crate::guard::Guard;
use crate::regions::{final_zone, initial_zone};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub from: String,
    pub letter: Symbol,
    pub guard: Guard,
    pub to: String,
}

impl Edge {
    pub fn new(
        from: impl Into<String>,
        letter: impl Into<Symbol>,
        guard: Guard,
        to: impl Into<String>,
    ) -> Edge {
        Edge {
            from: from.into(),
            letter: letter.into(),
            guard,
            to: to.into(),
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} -{}[{}]-> {}",
            self.from, self.letter, self.guard, self.to
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ecta {
    alphabet: Alphabet,
    locations: Vec<String>,
    initial: String,
    accepting: BTreeSet<String>,
    edges: Vec<Edge>,
    clocks: Arc<[Clock]>,
}

impl Ecta {
    pub fn new(
        alphabet: Alphabet,
        locations: impl IntoIterator<Item = impl Into<String>>,
        initial: impl Into<String>,
        accepting: impl IntoIterator<Item = impl Into<String>>,
        edges: Vec<Edge>,
    ) -> Result<Ecta> {
        let locations: Vec<String> = locations.into_iter().map(Into::into).collect();
        let initial = initial.into();
        let accepting: BTreeSet<String> = accepting.into_iter().map(Into::into).collect();
        let mut seen = BTreeSet::new();
        for l in &locations {
            if !seen.insert(l) {
                return Err(Error::InvalidAutomaton(format!("duplicate location `{l}`")));
            }
        }
        let known = |l: &String| -> Result<()> {
            if seen.contains(l) {
                Ok(())
            } else {
                Err(Error::UnknownLocation(l.clone()))
            }
        };
        known(&initial)?;
        for l in &accepting {
            known(l)?;
        }
        let clocks = alphabet.clocks();
        for e in &edges {
            known(&e.from)?;
            known(&e.to)?;
            if !alphabet.contains(&e.letter) {
                return Err(Error::UnknownLetter(e.letter.to_string()));
            }
            for x in e.guard.clocks() {
                if !clocks.contains(&x) {
                    return Err(Error::InvalidAutomaton(format!(
                        "guard `{}` uses clock {x} outside the alphabet",
                        e.guard
                    )));
                }
            }
        }
        Ok(Ecta {
            alphabet,
            locations,
            initial,
            accepting,
            edges,
            clocks,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn clocks(&self) -> &Arc<[Clock]> {
        &self.clocks
    }

    pub fn locations(&self) -> &[String] {
        &self.locations
    }

    pub fn initial(&self) -> &str {
        &self.initial
    }

    pub fn accepting(&self) -> &BTreeSet<String> {
        &self.accepting
    }

    pub fn is_accepting(&self, location: &str) -> bool {
        self.accepting.contains(location)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edges_from<'a>(
        &'a self,
        location: &'a str,
        letter: &'a Symbol,
    ) -> impl Iterator<Item = &'a Edge> + 'a {
        self.edges
            .iter()
            .filter(move |e| e.from == location && &e.letter == letter)
    }

    /// Largest constant appearing in a guard.
    pub fn max_constant(&self) -> u32 {
        self.edges
            .iter()
            .map(|e| e.guard.max_constant())
            .max()
            .unwrap_or(0)
    }

    /// Zone of initial valuations: every history clock ⊥.
    pub fn initial_zone(&self) -> Edbm {
        initial_zone(&self.clocks)
    }

    /// Zone of final valuations: every prophecy clock ⊥.
    pub fn final_zone(&self) -> Edbm {
        final_zone(&self.clocks)
    }

    fn check_letter(&self, letter: &Symbol) -> Result<()> {
        if self.alphabet.contains(letter) {
            Ok(())
        } else {
            Err(Error::UnknownLetter(letter.to_string()))
        }
    }

    /// Reads the JSON file format.
    pub fn from_json(text: &str) -> Result<Ecta> {
        let file: EctaFile = serde_json::from_str(text).map_err(|e| Error::Parse {
            offset: 0,
            message: format!("line {} column {}: {e}", e.line(), e.column()),
        })?;
        file.into_ecta()
    }

    pub fn to_file(&self) -> EctaFile {
        EctaFile {
            alphabet: self
                .alphabet
                .letters()
                .iter()
                .map(|s| s.to_string())
                .collect(),
            locations: self.locations.clone(),
            initial: self.initial.clone(),
            accepting: self.accepting.iter().cloned().collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeFile {
                    from: e.from.clone(),
                    letter: e.letter.to_string(),
                    guard: e.guard.to_string(),
                    to: e.to.clone(),
                })
                .collect(),
            cmax: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("plain data serializes")
    }
}

/// On-disk form of an automaton.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EctaFile {
    pub alphabet: Vec<String>,
    pub locations: Vec<String>,
    pub initial: String,
    #[serde(default)]
    pub accepting: Vec<String>,
    #[serde(default)]
    pub edges: Vec<EdgeFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cmax: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeFile {
    pub from: String,
    pub letter: String,
    #[serde(default = "true_guard")]
    pub guard: String,
    pub to: String,
}

fn true_guard() -> String {
    "true".into()
}

impl EctaFile {
    pub fn into_ecta(self) -> Result<Ecta> {
        let alphabet = Alphabet::new(self.alphabet)?;
        let edges = self
            .edges
            .into_iter()
            .map(|e| Ok(Edge::new(e.from, e.letter, Guard::parse(&e.guard)?, e.to)))
            .collect::<Result<Vec<_>>>()?;
        Ecta::new(
            alphabet,
            self.locations,
            self.initial,
            self.accepting,
            edges,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedState {
    pub location: String,
    pub valuation: Valuation,
}

impl fmt::Display for ExtendedState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.location, self.valuation)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TimedWord {
    events: Vec<(Symbol, Rational)>,
}

impl TimedWord {
    pub fn new(events: impl IntoIterator<Item = (Symbol, Rational)>) -> Result<TimedWord> {
        let events: Vec<(Symbol, Rational)> = events.into_iter().collect();
        let mut last = int(0);
        for (letter, t) in &events {
            if *t < last {
                return Err(Error::InvalidWord(format!(
                    "time {} of `{letter}` is smaller than the previous time {}",
                    format_rational(t),
                    format_rational(&last)
                )));
            }
            last = t.clone();
        }
        Ok(TimedWord { events })
    }

    pub fn empty() -> TimedWord {
        TimedWord::default()
    }

    /// Parses `(b,0)(b,1)(a,2)` or `b@0 b@1 a@2.5`.
    pub fn parse(text: &str) -> Result<TimedWord> {
        let text = text.trim();
        let mut events = Vec::new();
        if text.starts_with('(') {
            for chunk in text.split(')').map(str::trim).filter(|c| !c.is_empty()) {
                let inner = chunk
                    .strip_prefix('(')
                    .ok_or_else(|| Error::InvalidWord(format!("bad event `{chunk})`")))?;
                let (letter, time) = inner
                    .split_once(',')
                    .ok_or_else(|| Error::InvalidWord(format!("bad event `({inner})`")))?;
                events.push((Symbol::new(letter.trim()), parse_rational(time.trim())?));
            }
        } else {
            for item in text.split_whitespace() {
                let (letter, time) = item.split_once('@').ok_or_else(|| {
                    Error::InvalidWord(format!("expected `letter@time`, got `{item}`"))
                })?;
                events.push((Symbol::new(letter), parse_rational(time)?));
            }
        }
        TimedWord::new(events)
    }

    /// Reads a JSON list of `[letter, time]` pairs, times as strings or numbers.
    pub fn from_json(text: &str) -> Result<TimedWord> {
        let raw: Vec<(String, serde_json::Value)> =
            serde_json::from_str(text).map_err(|e| Error::Parse {
                offset: 0,
                message: e.to_string(),
            })?;
        let mut events = Vec::new();
        for (letter, time) in raw {
            let t = match time {
                serde_json::Value::String(s) => parse_rational(&s)?,
                serde_json::Value::Number(n) => parse_rational(&n.to_string())?,
                other => return Err(Error::InvalidWord(format!("bad time {other}"))),
            };
            events.push((Symbol::new(letter), t));
        }
        TimedWord::new(events)
    }

    pub fn events(&self) -> &[(Symbol, Rational)] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn untime(&self) -> Vec<Symbol> {
        self.events.iter().map(|(a, _)| a.clone()).collect()
    }

    /// Clock values right before event `i` fires, with the prophecy clock of
    /// its own letter already predicting the next occurrence.
    pub fn valuation_at(&self, clocks: &[Clock], i: usize) -> Result<Valuation> {
        let now = &self.events[i].1;
        Valuation::new(clocks.iter().map(|x| {
            let value: ClockValue = if x.is_history() {
                self.events[..i]
                    .iter()
                    .rev()
                    .find(|(a, _)| *a == x.letter)
                    .map(|(_, t)| now - t)
            } else {
                self.events[i + 1..]
                    .iter()
                    .find(|(a, _)| *a == x.letter)
                    .map(|(_, t)| t - now)
            };
            (x.clone(), value)
        }))
    }

    /// The initial valuation: history ⊥, prophecy = first occurrence time.
    pub fn start_valuation(&self, clocks: &[Clock]) -> Result<Valuation> {
        Valuation::new(clocks.iter().map(|x| {
            let value = if x.is_history() {
                None
            } else {
                self.events
                    .iter()
                    .find(|(a, _)| *a == x.letter)
                    .map(|(_, t)| t.clone())
            };
            (x.clone(), value)
        }))
    }
}

impl fmt::Display for TimedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.events.is_empty() {
            return f.write_str("ε");
        }
        for (a, t) in &self.events {
            write!(f, "({a},{})", format_rational(t))?;
        }
        Ok(())
    }
}

/// Fires letter `letter` from `s`, predicting its next occurrence at
/// `next`. One successor per enabled edge.
pub fn discrete_step(
    a: &Ecta,
    s: &ExtendedState,
    letter: &Symbol,
    next: ClockValue,
) -> Result<Vec<ExtendedState>> {
    a.check_letter(letter)?;
    let p = Clock::prophecy(letter.clone());
    if s.valuation.value(&p)? != Some(&int(0)) {
        return Err(Error::ProphecyNotZero(p));
    }
    let fired = s.valuation.with(&p, next)?;
    let mut out = Vec::new();
    for e in a.edges_from(&s.location, letter) {
        if e.guard.satisfied_by(&fired)? {
            out.push(ExtendedState {
                location: e.to.clone(),
                valuation: fired.with(&Clock::history(letter.clone()), Some(int(0)))?,
            });
        }
    }
    Ok(out)
}

/// Edge indices of an accepting run on `word`, if one exists.
///
/// On a complete word every clock value is fixed by the word, so only the
/// choice of edges is searched.
pub fn accepting_run(a: &Ecta, word: &TimedWord) -> Result<Option<Vec<usize>>> {
    for (letter, _) in word.events() {
        a.check_letter(letter)?;
    }
    // reached[loc] = edge path to loc
    let mut reached: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    reached.insert(a.initial.clone(), Vec::new());
    for i in 0..word.len() {
        let v = word.valuation_at(&a.clocks, i)?;
        let letter = &word.events()[i].0;
        let mut next: BTreeMap<String, Vec<usize>> = BTreeMap::new();
        for (loc, path) in &reached {
            for (k, e) in a.edges.iter().enumerate() {
                if &e.from == loc
                    && &e.letter == letter
                    && !next.contains_key(&e.to)
                    && e.guard.satisfied_by(&v)?
                {
                    let mut p = path.clone();
                    p.push(k);
                    next.insert(e.to.clone(), p);
                }
            }
        }
        reached = next;
        if reached.is_empty() {
            return Ok(None);
        }
    }
    Ok(reached
        .into_iter()
        .find(|(loc, _)| a.is_accepting(loc))
        .map(|(_, path)| path))
}

pub fn accepts(a: &Ecta, word: &TimedWord) -> Result<bool> {
    Ok(accepting_run(a, word)?.is_some())
}

/// Replays `run` on `word` through elapse and [`discrete_step`], returning
/// the extended state reached after each event (the start state first).
pub fn replay_run(a: &Ecta, word: &TimedWord, run: &[usize]) -> Result<Vec<ExtendedState>> {
    if run.len() != word.len() {
        return Err(Error::InvalidWord("run and word lengths differ".into()));
    }
    let mut state = ExtendedState {
        location: a.initial.clone(),
        valuation: word.start_valuation(&a.clocks)?,
    };
    let mut out = vec![state.clone()];
    let mut now = int(0);
    for (i, &k) in run.iter().enumerate() {
        let (letter, t) = &word.events()[i];
        let elapsed = ExtendedState {
            location: state.location.clone(),
            valuation: state.valuation.elapse(&(t - &now))?,
        };
        now = t.clone();
        let next = word.events()[i + 1..]
            .iter()
            .find(|(b, _)| b == letter)
            .map(|(_, t2)| t2 - t);
        let edge = &a.edges[k];
        let successors = discrete_step(a, &elapsed, letter, next)?;
        state = successors
            .into_iter()
            .find(|s| s.location == edge.to)
            .ok_or_else(|| Error::InvalidWord(format!("edge {edge} not enabled at event {i}")))?;
        out.push(state.clone());
    }
    Ok(out)
}

/// Untimed words of length at most `k` accepted from some state of
/// `start`, computed with exact zone successors.
pub fn bounded_untimed_language(
    a: &Ecta,
    start: &[SymbolicState],
    k: usize,
) -> Result<BTreeSet<Vec<Symbol>>> {
    let fin = a.final_zone();
    let accepting_state = |s: &SymbolicState| -> Result<bool> {
        Ok(a.is_accepting(&s.location) && !s.zone.intersect(&fin)?.is_empty())
    };
    let mut out = BTreeSet::new();
    let mut layer: Vec<(Vec<Symbol>, Vec<SymbolicState>)> = vec![(Vec::new(), start.to_vec())];
    for depth in 0..=k {
        let mut next_layer = Vec::new();
        for (word, states) in &layer {
            let mut accepted = false;
            for s in states {
                if accepting_state(s)? {
                    accepted = true;
                    break;
                }
            }
            if accepted {
                out.insert(word.clone());
            }
            if depth == k {
                continue;
            }
            for letter in a.alphabet.letters() {
                let mut succ: Vec<SymbolicState> = Vec::new();
                for s in states {
                    for e in a.edges_from(&s.location, letter) {
                        for t in post_edge(e, s)? {
                            if !succ.contains(&t) {
                                succ.push(t);
                            }
                        }
                    }
                }
                if !succ.is_empty() {
                    let mut w = word.clone();
                    w.push(letter.clone());
                    next_layer.push((w, succ));
                }
            }
        }
        layer = next_layer;
    }
    Ok(out)
}

/// The automaton's start state `(q_i, Z0)`.
pub fn initial_state(a: &Ecta) -> SymbolicState {
    SymbolicState {
        location: a.initial.clone(),
        zone: a.initial_zone(),
    }
}

pub const BUILTIN_NAMES: [&str; 2] = ["ainf", "backdiv"];

/// Named fixture automata.
///
/// `ainf` accepts exactly the untimed words `bⁿa` with `n ≥ 1`, and no
/// universal region automaton recognizes that language. `backdiv` has an
/// empty language on which the backward zone search never terminates.
pub fn builtin_example(name: &str) -> Result<Ecta> {
    let g = |s: &str| Guard::parse(s).expect("fixture guard");
    match name {
        "ainf" => Ecta::new(
            Alphabet::new(["a", "b"])?,
            ["q0", "q1"],
            "q0",
            ["q1"],
            vec![
                Edge::new("q0", "b", g("p.b = 1 && p.a > 1"), "q0"),
                Edge::new("q0", "b", g("p.a = 1 && !(p.b < 1 || p.b = 1)"), "q0"),
                Edge::new("q0", "a", g("h.b = 1"), "q1"),
            ],
        ),
        "backdiv" => Ecta::new(
            Alphabet::new(["a", "b"])?,
            ["q0", "q1", "q2"],
            "q0",
            ["q2"],
            vec![
                Edge::new("q0", "a", g("p.b < 1"), "q1"),
                Edge::new("q1", "a", g("h.a = 1 && p.a = 1"), "q1"),
                Edge::new("q1", "a", g("p.b = 1"), "q2"),
                Edge::new("q2", "b", Guard::True, "q2"),
            ],
        ),
        other => Err(Error::NotFound(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clock::rat;

    fn word(text: &str) -> TimedWord {
        TimedWord::parse(text).unwrap()
    }

    fn syms(text: &str) -> Vec<Symbol> {
        text.chars().map(|c| Symbol::new(c.to_string())).collect()
    }

    #[test]
    fn discrete_step_on_ainf() {
        let a = builtin_example("ainf").unwrap();
        let v = Valuation::parse("p.a=1, p.b=0, h.a=bot, h.b=bot").unwrap();
        let s = ExtendedState {
            location: "q0".into(),
            valuation: v,
        };
        let out = discrete_step(&a, &s, &Symbol::new("b"), None).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].location, "q0");
        assert_eq!(
            out[0].valuation,
            Valuation::parse("p.a=1, p.b=bot, h.a=bot, h.b=0").unwrap()
        );
        let out = discrete_step(&a, &s, &Symbol::new("b"), Some(int(2))).unwrap();
        assert_eq!(out.len(), 1);
        // a second b before the a is not allowed
        let out = discrete_step(&a, &s, &Symbol::new("b"), Some(rat(1, 2))).unwrap();
        assert!(out.is_empty());
    }

    #[test]
    fn discrete_step_requires_expired_prophecy() {
        let a = builtin_example("ainf").unwrap();
        let s = ExtendedState {
            location: "q0".into(),
            valuation: Valuation::parse("p.a=1, p.b=0.5, h.a=bot, h.b=bot").unwrap(),
        };
        assert_eq!(
            discrete_step(&a, &s, &Symbol::new("b"), None),
            Err(Error::ProphecyNotZero(Clock::prophecy("b")))
        );
    }

    #[test]
    fn discrete_step_with_false_guard() {
        let a = builtin_example("ainf").unwrap();
        let s = ExtendedState {
            location: "q0".into(),
            valuation: Valuation::parse("p.a=2, p.b=0, h.a=bot, h.b=bot").unwrap(),
        };
        assert!(discrete_step(&a, &s, &Symbol::new("b"), Some(int(3)))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn ainf_membership() {
        let a = builtin_example("ainf").unwrap();
        assert!(accepts(&a, &word("(b,0)(b,1)(a,2)")).unwrap());
        assert!(!accepts(&a, &word("(a,0)")).unwrap());
        assert!(!accepts(&a, &TimedWord::empty()).unwrap());
        assert_eq!(
            accepts(&a, &word("(c,0)")),
            Err(Error::UnknownLetter("c".into()))
        );
    }

    #[test]
    fn empty_word_needs_accepting_initial() {
        let a = Ecta::new(Alphabet::new(["a"]).unwrap(), ["q"], "q", ["q"], vec![]).unwrap();
        assert!(accepts(&a, &TimedWord::empty()).unwrap());
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn replay_matches_determined_valuations() {
        let a = builtin_example("ainf").unwrap();
        let w = word("(b,0)(b,1)(b,2)(a,3)");
        let run = accepting_run(&a, &w).unwrap().unwrap();
        let states = replay_run(&a, &w, &run).unwrap();
        assert_eq!(states.last().unwrap().location, "q1");
        assert!(states.last().unwrap().valuation.is_final());
        for i in 1..w.len() {
            let v = w.valuation_at(a.clocks(), i).unwrap();
            // before event i the history clock of its letter is the time since the last one
            let before = &states[i].valuation;
            let dt = &w.events()[i].1 - &w.events()[i - 1].1;
            let elapsed = before.elapse(&dt).unwrap();
            for x in a.clocks().iter().filter(|x| x.is_history()) {
                assert_eq!(elapsed.value(x).unwrap(), v.value(x).unwrap());
            }
        }
    }

    #[test]
    fn ainf_bounded_language() {
        let a = builtin_example("ainf").unwrap();
        let lang = bounded_untimed_language(&a, &[initial_state(&a)], 4).unwrap();
        let expected: BTreeSet<Vec<Symbol>> =
            ["ba", "bba", "bbba"].iter().map(|w| syms(w)).collect();
        assert_eq!(lang, expected);
    }

    #[test]
    fn ainf_from_point_zone() {
        let a = builtin_example("ainf").unwrap();
        let z = Edbm::parse(
            a.clocks().clone(),
            "p.a = 2 && p.b = 0 && h.a = bot && h.b = bot",
        )
        .unwrap();
        let start = SymbolicState {
            location: "q0".into(),
            zone: z,
        };
        let lang = bounded_untimed_language(&a, &[start], 4).unwrap();
        assert_eq!(lang, [syms("bba")].into_iter().collect());
    }

    #[test]
    fn no_accepting_location_means_empty_language() {
        let a = Ecta::new(
            Alphabet::new(["a"]).unwrap(),
            ["q0", "q1"],
            "q0",
            Vec::<String>::new(),
            vec![Edge::new("q0", "a", Guard::True, "q1")],
        )
        .unwrap();
        assert!(bounded_untimed_language(&a, &[initial_state(&a)], 3)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn builtins() {
        assert_eq!(builtin_example("ainf").unwrap().locations().len(), 2);
        assert_eq!(builtin_example("backdiv").unwrap().locations().len(), 3);
        assert_eq!(builtin_example("nope"), Err(Error::NotFound("nope".into())));
    }

    #[test]
    fn json_round_trip() {
        for name in BUILTIN_NAMES {
            let a = builtin_example(name).unwrap();
            assert_eq!(Ecta::from_json(&a.to_json()).unwrap(), a);
        }
    }

    #[test]
    fn json_errors() {
        assert!(matches!(Ecta::from_json("{"), Err(Error::Parse { .. })));
        let bad_loc =
            r#"{"alphabet":["a"],"locations":["q"],"initial":"r","accepting":[],"edges":[]}"#;
        assert_eq!(
            Ecta::from_json(bad_loc),
            Err(Error::UnknownLocation("r".into()))
        );
        let bad_clock = r#"{"alphabet":["a"],"locations":["q"],"initial":"q","edges":[{"from":"q","letter":"a","guard":"h.b < 1","to":"q"}]}"#;
        assert!(matches!(
            Ecta::from_json(bad_clock),
            Err(Error::InvalidAutomaton(_))
        ));
    }

    #[test]
    fn word_parsing() {
        assert_eq!(word("b@0 b@1 a@2.5"), word("(b,0)(b,1)(a,5/2)"));
        assert_eq!(
            TimedWord::from_json(r#"[["b","0"],["a",1.5]]"#).unwrap(),
            word("b@0 a@1.5")
        );
        assert!(matches!(
            TimedWord::parse("b@1 a@0"),
            Err(Error::InvalidWord(_))
        ));
    }
}
