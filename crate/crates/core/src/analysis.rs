//! Zone-based reachability: exact symbolic successors and predecessors, and
//! the forward/backward worklist searches built on them.
//!
//! Neither search terminates on every automaton, so both run on a fuel
//! budget and answer `Unknown` when it runs out.

use crate::automaton::{Ecta, Edge};
use crate::clock::Clock;
use crate::edbm::{guard_to_zones, Constraint, Edbm, Rel};
use crate::error::{Error, Result};
use serde::Serialize;
use std::collections::VecDeque;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymbolicState {
    pub location: String,
    pub zone: Edbm,
}

impl SymbolicState {
    pub fn new(location: impl Into<String>, zone: Edbm) -> SymbolicState {
        SymbolicState {
            location: location.into(),
            zone,
        }
    }
}

impl fmt::Display for SymbolicState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.location, self.zone.describe())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    NonEmpty,
    Empty,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::NonEmpty => "nonempty",
            Verdict::Empty => "empty",
            Verdict::Unknown => "unknown",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisResult {
    pub verdict: Verdict,
    /// States taken off the worklist.
    pub steps_used: usize,
    /// For `NonEmpty`: the states from the start of the search to the one
    /// that met the goal.
    pub witness: Option<Vec<SymbolicState>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub fuel: usize,
    /// Goal test `Z ⊆ goal` instead of `Z ∩ goal ≠ ∅`.
    pub literal_accept: bool,
}

impl SearchOptions {
    pub fn with_fuel(fuel: usize) -> SearchOptions {
        SearchOptions {
            fuel,
            literal_accept: false,
        }
    }
}

fn pinned(zone: &Edbm, x: &Clock) -> Result<Edbm> {
    let point = Edbm::from_constraints(
        zone.clocks().clone(),
        &[Constraint::clock(x.clone(), Rel::Eq, 0)],
    )?;
    zone.intersect(&point)
}

/// Successors of `s` through `e`: let time pass until the prophecy clock of
/// `e`'s letter hits 0, predict its next occurrence afresh, check the guard,
/// then reset the history clock.
pub fn post_edge(e: &Edge, s: &SymbolicState) -> Result<Vec<SymbolicState>> {
    if e.from != s.location || s.zone.is_empty() {
        return Ok(Vec::new());
    }
    let clocks = s.zone.clocks();
    let (h, p) = (
        Clock::history(e.letter.clone()),
        Clock::prophecy(e.letter.clone()),
    );
    let guard = guard_to_zones(&e.guard, clocks)?;
    let mut out = Vec::new();
    for later in s.zone.future_exact().iter() {
        let fired = pinned(later, &p)?.release(&p)?;
        if fired.is_empty() {
            continue;
        }
        for psi in guard.iter() {
            let z = pinned(&fired.intersect(psi)?.release(&h)?, &h)?;
            if !z.is_empty() {
                let t = SymbolicState::new(e.to.clone(), z);
                if !out.contains(&t) {
                    out.push(t);
                }
            }
        }
    }
    Ok(out)
}

/// Predecessors of `s` through `e`, the time-reversed dual of [`post_edge`].
pub fn pre_edge(e: &Edge, s: &SymbolicState) -> Result<Vec<SymbolicState>> {
    if e.to != s.location || s.zone.is_empty() {
        return Ok(Vec::new());
    }
    let clocks = s.zone.clocks();
    let (h, p) = (
        Clock::history(e.letter.clone()),
        Clock::prophecy(e.letter.clone()),
    );
    let unfired = pinned(&s.zone, &h)?.release(&h)?;
    if unfired.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for psi in guard_to_zones(&e.guard, clocks)?.iter() {
        let before = pinned(&unfired.intersect(psi)?.release(&p)?, &p)?;
        for z in before.past_exact() {
            let t = SymbolicState::new(e.from.clone(), z);
            if !out.contains(&t) {
                out.push(t);
            }
        }
    }
    Ok(out)
}

fn goal_met(zone: &Edbm, goal: &Edbm, literal: bool) -> Result<bool> {
    if literal {
        Ok(!zone.is_empty() && zone.is_subset_of(goal)?)
    } else {
        Ok(!zone.intersect(goal)?.is_empty())
    }
}

#[derive(Clone, Copy)]
enum Direction {
    Forward,
    Backward,
}

fn search(a: &Ecta, dir: Direction, opts: &SearchOptions) -> Result<AnalysisResult> {
    if opts.fuel == 0 {
        return Err(Error::PreconditionViolated(
            "fuel must be at least 1".into(),
        ));
    }
    let (starts, goal): (Vec<SymbolicState>, Edbm) = match dir {
        Direction::Forward => (
            vec![SymbolicState::new(a.initial(), a.initial_zone())],
            a.final_zone(),
        ),
        Direction::Backward => (
            a.accepting()
                .iter()
                .map(|q| SymbolicState::new(q.clone(), a.final_zone()))
                .collect(),
            a.initial_zone(),
        ),
    };
    let is_goal = |s: &SymbolicState| -> Result<bool> {
        let location_ok = match dir {
            Direction::Forward => a.is_accepting(&s.location),
            Direction::Backward => s.location == a.initial(),
        };
        Ok(location_ok && goal_met(&s.zone, &goal, opts.literal_accept)?)
    };

    let mut nodes: Vec<(SymbolicState, Option<usize>)> = Vec::new();
    let mut queue = VecDeque::new();
    for s in starts {
        if !s.zone.is_empty() {
            queue.push_back(nodes.len());
            nodes.push((s, None));
        }
    }
    let mut visited: Vec<usize> = Vec::new();
    let mut steps = 0;
    while let Some(idx) = queue.pop_front() {
        if steps == opts.fuel {
            return Ok(AnalysisResult {
                verdict: Verdict::Unknown,
                steps_used: steps,
                witness: None,
            });
        }
        steps += 1;
        let s = nodes[idx].0.clone();
        if is_goal(&s)? {
            let mut path = Vec::new();
            let mut cur = Some(idx);
            while let Some(i) = cur {
                path.push(nodes[i].0.clone());
                cur = nodes[i].1;
            }
            path.reverse();
            return Ok(AnalysisResult {
                verdict: Verdict::NonEmpty,
                steps_used: steps,
                witness: Some(path),
            });
        }
        let mut subsumed = false;
        for &v in &visited {
            let seen = &nodes[v].0;
            if seen.location == s.location && s.zone.is_subset_of(&seen.zone)? {
                subsumed = true;
                break;
            }
        }
        if subsumed {
            continue;
        }
        visited.push(idx);
        for e in a.edges() {
            let next = match dir {
                Direction::Forward => post_edge(e, &s)?,
                Direction::Backward => pre_edge(e, &s)?,
            };
            for t in next {
                queue.push_back(nodes.len());
                nodes.push((t, Some(idx)));
            }
        }
    }
    Ok(AnalysisResult {
        verdict: Verdict::Empty,
        steps_used: steps,
        witness: None,
    })
}

/// Forward search from `(q_i, Z0)`.
pub fn forw_exact(a: &Ecta, fuel: usize) -> Result<AnalysisResult> {
    forw_exact_with(a, &SearchOptions::with_fuel(fuel))
}

pub fn forw_exact_with(a: &Ecta, opts: &SearchOptions) -> Result<AnalysisResult> {
    search(a, Direction::Forward, opts)
}

/// Backward search from `{(q, Z_f) : q accepting}`.
pub fn back_exact(a: &Ecta, fuel: usize) -> Result<AnalysisResult> {
    back_exact_with(a, &SearchOptions::with_fuel(fuel))
}

pub fn back_exact_with(a: &Ecta, opts: &SearchOptions) -> Result<AnalysisResult> {
    search(a, Direction::Backward, opts)
}

/// The time-reversed automaton: edges reversed, history and prophecy clocks
/// swapped in guards, initial and accepting locations exchanged.
pub fn mirror(a: &Ecta) -> Result<Ecta> {
    if a.accepting().len() != 1 {
        return Err(Error::Unsupported(format!(
            "mirroring needs exactly one accepting location, found {}",
            a.accepting().len()
        )));
    }
    let new_initial = a.accepting().iter().next().expect("one accepting").clone();
    let edges = a
        .edges()
        .iter()
        .map(|e| {
            Edge::new(
                e.to.clone(),
                e.letter.clone(),
                e.guard.mirrored(),
                e.from.clone(),
            )
        })
        .collect();
    Ecta::new(
        a.alphabet().clone(),
        a.locations().to_vec(),
        new_initial,
        [a.initial().to_string()],
        edges,
    )
}

/// Applies `pre_edge` along a sequence of edge indices, keeping every
/// predecessor at each step.
pub fn pre_chain(
    a: &Ecta,
    start: &SymbolicState,
    edges: &[usize],
) -> Result<Vec<Vec<SymbolicState>>> {
    let mut current = vec![start.clone()];
    let mut out = Vec::new();
    for &k in edges {
        let e = a
            .edges()
            .get(k)
            .ok_or_else(|| Error::PreconditionViolated(format!("no edge with index {k}")))?;
        let mut next = Vec::new();
        for s in &current {
            for t in pre_edge(e, s)? {
                if !next.contains(&t) {
                    next.push(t);
                }
            }
        }
        out.push(next.clone());
        current = next;
    }
    Ok(out)
}

/// On the `backdiv` fixture: the zones reached at `q1` by firing the
/// self-loop backwards `n` times after `e'` and the final `b`-loop.
/// Entry `k` is the zone after `k` loop firings.
pub fn backdiv_loop_zones(a: &Ecta, n: usize) -> Result<Vec<SymbolicState>> {
    let find = |from: &str, to: &str| {
        a.edges()
            .iter()
            .position(|e| e.from == from && e.to == to)
            .ok_or_else(|| Error::InvalidAutomaton(format!("no edge {from} -> {to}")))
    };
    let (b_loop, e_prime, e_loop) = (find("q2", "q2")?, find("q1", "q2")?, find("q1", "q1")?);
    let start = SymbolicState::new("q2", a.final_zone());
    let mut path = vec![b_loop, e_prime];
    path.extend(std::iter::repeat_n(e_loop, n));
    let steps = pre_chain(a, &start, &path)?;
    steps[1..]
        .iter()
        .map(|set| match set.as_slice() {
            [one] => Ok(one.clone()),
            _ => Err(Error::InvalidAutomaton(format!(
                "expected a single predecessor zone, got {}",
                set.len()
            ))),
        })
        .collect()
}
