use crate::clock::Clock;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("clock {0} is undefined (bot)")]
    UndefinedClock(Clock),
    #[error("unknown clock {0}")]
    UnknownClock(Clock),
    #[error("prophecy clock {0} must be 0 when its letter fires")]
    ProphecyNotZero(Clock),
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("unknown location `{0}`")]
    UnknownLocation(String),
    #[error("no such fixture `{0}`")]
    NotFound(String),
    #[error("clock lists of the operands differ")]
    ClockMismatch,
    #[error("zone is empty")]
    EmptyZone,
    #[error("valuations are not region-equivalent")]
    NotEquivalent,
    #[error("cmax {cmax} is smaller than the largest guard constant {required}")]
    CmaxTooSmall { cmax: u32, required: u32 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),
    #[error("invalid timed word: {0}")]
    InvalidWord(String),
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
