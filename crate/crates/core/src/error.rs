use thiserror::Error;

/// Errors shared across the problem, claims, solution, and axiom layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("a problem needs at least one generator")]
    EmptyProblem,
    #[error("dimension mismatch: expected length {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("not a permutation of 0..{n}")]
    InvalidPermutation { n: usize },
    #[error("coalition mask {mask:#b} is out of range for {n} players")]
    InvalidCoalition { mask: u32, n: usize },
    #[error("{n} players exceeds the {max}-player cap for this operation")]
    TooManyPlayers { n: usize, max: usize },
    #[error("support direction has a negative component at index {index}; the supremum over a comprehensive set is unbounded")]
    UnboundedDirection { index: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("marginal utility must be strictly decreasing and positive")]
    InvalidUtility,
    #[error("bisection failed to converge within {0} iterations")]
    NoConvergence(usize),
    #[error("game table has {found} entries, expected {expected}")]
    IncompleteGame { expected: usize, found: usize },
    #[error("generator matching must cover every generator on both sides")]
    InvalidMatching,
    #[error("transfer balance violated: solution total differs from alternative total plus surplus by {imbalance}")]
    InfeasibleTransfer { imbalance: f64 },
    #[error("axiom hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("unsupported for oracle-backed problems: {0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
