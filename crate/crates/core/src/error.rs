use thiserror::Error;

use crate::transforms::StepKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("memory budget exceeded: {requested} symbols requested, budget is {budget}")]
    BudgetExceeded { requested: u64, budget: u64 },

    #[error("{what} overflows 64-bit arithmetic")]
    Overflow { what: &'static str },

    #[error("length {length} is not a boundary of the {order}-partition")]
    NotABoundary { order: usize, length: usize },

    #[error("w({position}..{position}+q_{order}] is not an occurrence of s_{order}")]
    NotAnOccurrence { position: usize, order: usize },

    #[error("{kind} is not applicable at position {position}")]
    NotApplicable { kind: StepKind, position: usize },

    #[error("representation {0} is not valid")]
    InvalidRepresentation(String),

    #[error("value mismatch: representation denotes {actual}, expected {expected}")]
    ValueMismatch { expected: u64, actual: u64 },

    #[error("w({p1}..{p2}] is not a palindrome")]
    NotAPalindrome { p1: usize, p2: usize },

    #[error("empty occurrence w({p}..{p}] carries no representation pair")]
    EmptyOccurrence { p: usize },

    #[error("directive has only {found} positions with d >= {threshold} within {horizon} terms, {needed} required")]
    InsufficientDirective {
        found: usize,
        needed: usize,
        threshold: u64,
        horizon: usize,
    },

    #[error("enumeration explored more than {cap} candidates")]
    CandidateCap { cap: u64 },

    #[error("frontier grew beyond {cap} representations")]
    FrontierCap { cap: usize },

    #[error("word of length {length} exceeds the oracle cap {cap}")]
    OracleCap { length: usize, cap: usize },

    #[error("invalid cut sequence: {0}")]
    InvalidCuts(String),

    #[error("construction failed: {0}")]
    ConstructionFailed(String),

    #[error("normalization exceeded {cap} steps")]
    Nontermination { cap: u64 },
}

impl Error {
    /// True for errors caused by a resource cap rather than by the input's meaning.
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            Error::BudgetExceeded { .. }
                | Error::Overflow { .. }
                | Error::CandidateCap { .. }
                | Error::FrontierCap { .. }
                | Error::OracleCap { .. }
        )
    }
}
