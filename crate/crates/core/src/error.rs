use thiserror::Error;

use crate::rep::Segment;

/// Which of the rank-sequence inequalities failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankInequality {
    /// `r(i,j) >= r(i,j+1)`
    RowMonotone,
    /// `r(i-1,j) <= r(i,j)`
    ColumnMonotone,
    /// `r(i-1,j) - r(i-1,j+1) <= r(i,j) - r(i,j+1)`
    DoubleDifference,
    /// Shape or entry outside the allowed range.
    Shape,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid segment [{i},{j}] on {n} vertices")]
    InvalidSegment { i: usize, j: usize, n: usize },
    #[error("InvalidRankSequence: {kind:?} fails at (i={i}, j={j})")]
    InvalidRankSequence {
        kind: RankInequality,
        i: usize,
        j: usize,
    },
    #[error("MismatchedQuiver: {left} vs {right} vertices")]
    MismatchedQuiver { left: usize, right: usize },
    #[error("MismatchedType: symmetric types differ")]
    MismatchedType,
    #[error("InvalidMove: {0}")]
    InvalidMove(String),
    #[error("InsufficientMultiplicity: segment {segment} has multiplicity {have}, needs {need}")]
    InsufficientMultiplicity {
        segment: Segment,
        have: u32,
        need: u32,
    },
    #[error("RankDeltaViolation: move {0} changed ranks outside its predicted pattern")]
    RankDeltaViolation(String),
    #[error("NoEmbedding: {0} does not embed")]
    NoEmbedding(Segment),
    #[error("NotComparable: the second argument is not a degeneration of the first")]
    NotComparable,
    #[error("NotSplitType: operation requires (A_odd,-1) or (A_even,+1)")]
    NotSplitType,
    #[error("NotEpsilon: representation admits no compatible form of this type")]
    NotEpsilon,
    #[error("InstanceTooLarge: rank sum {size} exceeds bound {bound}")]
    InstanceTooLarge { size: u64, bound: u64 },
    #[error("Infeasible: no strictly interior point found")]
    Infeasible,
    #[error("AlgorithmStuck: {0}")]
    AlgorithmStuck(String),
    #[error("InvalidInput: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Bare variant name, used by the CLI for error reporting.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidSegment { .. } => "InvalidSegment",
            Error::InvalidRankSequence { .. } => "InvalidRankSequence",
            Error::MismatchedQuiver { .. } => "MismatchedQuiver",
            Error::MismatchedType => "MismatchedType",
            Error::InvalidMove(_) => "InvalidMove",
            Error::InsufficientMultiplicity { .. } => "InsufficientMultiplicity",
            Error::RankDeltaViolation(_) => "RankDeltaViolation",
            Error::NoEmbedding(_) => "NoEmbedding",
            Error::NotComparable => "NotComparable",
            Error::NotSplitType => "NotSplitType",
            Error::NotEpsilon => "NotEpsilon",
            Error::InstanceTooLarge { .. } => "InstanceTooLarge",
            Error::Infeasible => "Infeasible",
            Error::AlgorithmStuck(_) => "AlgorithmStuck",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
