//! Event-clock automata: zones over history and prophecy clocks, regions,
//! the region automaton and exact zone-based emptiness analysis.

pub mod analysis;
pub mod automaton;
pub mod clock;
pub mod edbm;
pub mod error;
pub mod guard;
pub mod region_automaton;
pub mod regions;

pub use analysis::{
    back_exact, forw_exact, mirror, post_edge, pre_edge, AnalysisResult, SymbolicState, Verdict,
};
pub use automaton::{
    accepts, builtin_example, discrete_step, Ecta, Edge, ExtendedState, TimedWord,
};
pub use clock::{
    Alphabet, Clock, ClockKind, ClockValue, Rational, SignedValuation, Symbol, Valuation,
};
pub use edbm::{guard_to_zones, Bound, Edbm, Strictness, ZoneSet};
pub use error::{Error, Result};
pub use guard::{satisfies, AtomicConstraint, CmpOp, Guard};
pub use region_automaton::{
    build, state_count_bound, BuildMode, Quantifier, RaState, RegionAutomaton,
};
pub use regions::{decompose, equivalent, region_of, ClockClass, Diagonal, Region, RegionVariant};
