//! Finite region automata of an ECTA.
//!
//! States pair a location with a region. An existential automaton has an
//! edge when some valuation of the source region can make the step into the
//! target region; a universal one requires every valuation to manage it. The
//! existential automaton recognizes exactly the untimed language of the
//! ECTA, the universal one in general only part of it.

use crate::analysis::{post_edge, pre_edge, SymbolicState};
use crate::automaton::Ecta;
use crate::clock::{Alphabet, Symbol};
use crate::edbm::ZoneSet;
use crate::error::{Error, Result};
use crate::regions::{decompose, initial_regions, Region, RegionVariant};
use num_bigint::BigUint;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantifier {
    Existential,
    Universal,
}

impl fmt::Display for Quantifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Quantifier::Existential => "existential",
            Quantifier::Universal => "universal",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BuildMode {
    pub quantifier: Quantifier,
    pub variant: RegionVariant,
}

impl BuildMode {
    pub fn new(quantifier: Quantifier, variant: RegionVariant) -> BuildMode {
        BuildMode {
            quantifier,
            variant,
        }
    }

    pub const ALL: [BuildMode; 4] = [
        BuildMode {
            quantifier: Quantifier::Existential,
            variant: RegionVariant::Classic,
        },
        BuildMode {
            quantifier: Quantifier::Existential,
            variant: RegionVariant::Refined,
        },
        BuildMode {
            quantifier: Quantifier::Universal,
            variant: RegionVariant::Classic,
        },
        BuildMode {
            quantifier: Quantifier::Universal,
            variant: RegionVariant::Refined,
        },
    ];
}

impl fmt::Display for BuildMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.quantifier, self.variant)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RaState {
    pub location: String,
    pub region: Region,
}

impl fmt::Display for RaState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | {}", self.location, self.region)
    }
}

/// The reachable part of a region automaton. States are numbered in BFS
/// discovery order.
#[derive(Debug, Clone)]
pub struct RegionAutomaton {
    mode: BuildMode,
    cmax: u32,
    alphabet: Alphabet,
    states: Vec<RaState>,
    initials: Vec<usize>,
    accepting: BTreeSet<usize>,
    edges: BTreeSet<(usize, Symbol, usize)>,
    succ: HashMap<(usize, Symbol), Vec<usize>>,
}

/// Builds the reachable part of the region automaton of `a` for `mode`.
pub fn build(a: &Ecta, cmax: u32, mode: BuildMode) -> Result<RegionAutomaton> {
    let required = a.max_constant();
    if cmax < required {
        return Err(Error::CmaxTooSmall { cmax, required });
    }
    let mut states: Vec<RaState> = Vec::new();
    let mut index: HashMap<RaState, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    let mut add = |s: RaState, states: &mut Vec<RaState>, queue: &mut VecDeque<usize>| -> usize {
        if let Some(&k) = index.get(&s) {
            return k;
        }
        let k = states.len();
        index.insert(s.clone(), k);
        states.push(s);
        queue.push_back(k);
        k
    };

    let mut initials = Vec::new();
    for r in initial_regions(a.clocks(), cmax, mode.variant)? {
        let s = RaState {
            location: a.initial().to_string(),
            region: r,
        };
        initials.push(add(s, &mut states, &mut queue));
    }

    let mut edges = BTreeSet::new();
    while let Some(k) = queue.pop_front() {
        let source = states[k].clone();
        let zone = source.region.to_zone();
        let from = SymbolicState::new(source.location.clone(), zone.clone());
        for letter in a.alphabet().letters() {
            // group the letter's edges by target location
            let mut by_target: BTreeMap<&str, Vec<SymbolicState>> = BTreeMap::new();
            for e in a.edges_from(&source.location, letter) {
                let posts = post_edge(e, &from)?;
                by_target.entry(e.to.as_str()).or_default().extend(posts);
            }
            for (target, posts) in by_target {
                let mut candidates = BTreeSet::new();
                for p in &posts {
                    candidates.extend(decompose(&p.zone, cmax, mode.variant)?);
                }
                for r2 in candidates {
                    let keep = match mode.quantifier {
                        Quantifier::Existential => true,
                        Quantifier::Universal => {
                            universally_enabled(a, &source, letter, target, &r2)?
                        }
                    };
                    if keep {
                        let t = RaState {
                            location: target.to_string(),
                            region: r2,
                        };
                        let j = add(t, &mut states, &mut queue);
                        edges.insert((k, letter.clone(), j));
                    }
                }
            }
        }
    }

    let accepting = states
        .iter()
        .enumerate()
        .filter(|(_, s)| a.is_accepting(&s.location) && s.region.is_final())
        .map(|(k, _)| k)
        .collect();
    let mut succ: HashMap<(usize, Symbol), Vec<usize>> = HashMap::new();
    for (i, letter, j) in &edges {
        succ.entry((*i, letter.clone())).or_default().push(*j);
    }
    Ok(RegionAutomaton {
        mode,
        cmax,
        alphabet: a.alphabet().clone(),
        states,
        initials,
        accepting,
        edges,
        succ,
    })
}

/// Every valuation of `source` reaches `r2` at `target` by some `letter`
/// edge: the region's zone minus the union of the edges' predecessors of
/// `r2` is empty.
fn universally_enabled(
    a: &Ecta,
    source: &RaState,
    letter: &Symbol,
    target: &str,
    r2: &Region,
) -> Result<bool> {
    let goal = SymbolicState::new(target, r2.to_zone());
    let mut rest = ZoneSet::from_zones(a.clocks().clone(), [source.region.to_zone()]);
    for e in a
        .edges_from(&source.location, letter)
        .filter(|e| e.to == target)
    {
        for pre in pre_edge(e, &goal)? {
            rest = rest.subtract(&pre.zone)?;
            if rest.is_empty() {
                return Ok(true);
            }
        }
    }
    Ok(rest.is_empty())
}

/// `m · R(2|Σ|, cmax + 1)` with `R(n, c) = n! · 2ⁿ · (2c + 2)ⁿ`.
pub fn state_count_bound(a: &Ecta, cmax: u32) -> BigUint {
    let m = BigUint::from(a.locations().len());
    m * alur_dill_regions(2 * a.alphabet().len() as u32, cmax + 1)
}

/// `n! · 2ⁿ · (2c + 2)ⁿ`
pub fn alur_dill_regions(n: u32, c: u32) -> BigUint {
    let fact: BigUint = (1..=n).map(BigUint::from).product();
    let two_c = BigUint::from(2u32 * c + 2);
    fact * BigUint::from(2u32).pow(n) * two_c.pow(n)
}

impl RegionAutomaton {
    pub fn mode(&self) -> BuildMode {
        self.mode
    }

    pub fn cmax(&self) -> u32 {
        self.cmax
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn states(&self) -> &[RaState] {
        &self.states
    }

    pub fn initials(&self) -> &[usize] {
        &self.initials
    }

    pub fn accepting(&self) -> &BTreeSet<usize> {
        &self.accepting
    }

    pub fn edges(&self) -> &BTreeSet<(usize, Symbol, usize)> {
        &self.edges
    }

    pub fn successors(&self, state: usize, letter: &Symbol) -> &[usize] {
        self.succ
            .get(&(state, letter.clone()))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    fn step(&self, current: &BTreeSet<usize>, letter: &Symbol) -> BTreeSet<usize> {
        current
            .iter()
            .flat_map(|&k| self.successors(k, letter).iter().copied())
            .collect()
    }

    /// Subset-style run of the automaton on an untimed word.
    pub fn accepts(&self, word: &[Symbol]) -> bool {
        let mut current: BTreeSet<usize> = self.initials.iter().copied().collect();
        for letter in word {
            current = self.step(&current, letter);
            if current.is_empty() {
                return false;
            }
        }
        current.iter().any(|k| self.accepting.contains(k))
    }

    /// No accepting state is reachable. All stored states are reachable, so
    /// this only asks whether any is accepting.
    pub fn language_empty(&self) -> bool {
        self.accepting.is_empty()
    }

    /// Accepted words of length at most `k`.
    pub fn bounded_language(&self, k: usize) -> BTreeSet<Vec<Symbol>> {
        let mut out = BTreeSet::new();
        let start: BTreeSet<usize> = self.initials.iter().copied().collect();
        let mut layer = vec![(Vec::new(), start)];
        for depth in 0..=k {
            let mut next = Vec::new();
            for (word, current) in &layer {
                if current.iter().any(|s| self.accepting.contains(s)) {
                    out.insert(word.clone());
                }
                if depth == k {
                    continue;
                }
                for letter in self.alphabet.letters() {
                    let after = self.step(current, letter);
                    if !after.is_empty() {
                        let mut w = word.clone();
                        w.push(letter.clone());
                        next.push((w, after));
                    }
                }
            }
            layer = next;
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let mut out =
            String::from("digraph region_automaton {\n  rankdir=LR;\n  node [shape=circle];\n");
        for (k, s) in self.states.iter().enumerate() {
            let shape = if self.accepting.contains(&k) {
                "doublecircle"
            } else {
                "circle"
            };
            let label = s.to_string().replace('\\', "\\\\").replace('"', "\\\"");
            let _ = writeln!(out, "  s{k} [shape={shape}, label=\"{label}\"];");
        }
        for &k in &self.initials {
            let _ = writeln!(out, "  init{k} [shape=point];\n  init{k} -> s{k};");
        }
        for (i, letter, j) in &self.edges {
            let _ = writeln!(out, "  s{i} -> s{j} [label=\"{letter}\"];");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let states: Vec<_> = self
            .states
            .iter()
            .enumerate()
            .map(|(k, s)| {
                serde_json::json!({
                    "id": k,
                    "location": s.location,
                    "region": s.region.to_string(),
                    "initial": self.initials.contains(&k),
                    "accepting": self.accepting.contains(&k),
                })
            })
            .collect();
        let edges: Vec<_> = self
            .edges
            .iter()
            .map(
                |(i, letter, j)| serde_json::json!({"from": i, "letter": letter.as_str(), "to": j}),
            )
            .collect();
        serde_json::json!({
            "quantifier": self.mode.quantifier,
            "variant": self.mode.variant.to_string(),
            "cmax": self.cmax,
            "alphabet": self.alphabet.letters().iter().map(Symbol::as_str).collect::<Vec<_>>(),
            "states": states,
            "edges": edges,
        })
    }
}

/// Convenience: does the untimed language of `a` come out empty under the
/// existential classic region automaton?
pub fn language_empty(a: &Ecta, cmax: u32) -> Result<bool> {
    Ok(build(
        a,
        cmax,
        BuildMode::new(Quantifier::Existential, RegionVariant::Classic),
    )?
    .language_empty())
}
