use thiserror::Error;

/// Coarse failure classes, used by front ends to map errors to exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed or out-of-range input data.
    Validation,
    /// Input is well formed but violates the hypotheses of the case being applied.
    Hypothesis,
    /// An internal invariant failed; indicates a bug, not bad input.
    Inconsistency,
}

impl ErrorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorKind::Validation => "validation",
            ErrorKind::Hypothesis => "hypothesis",
            ErrorKind::Inconsistency => "inconsistency",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("rank of {which} must be at least 2, got {rank}")]
    RankTooSmall { which: &'static str, rank: u32 },

    #[error("rank of {which} is {rank}, which exceeds the configured cap of {cap}")]
    RankExceedsCap { which: &'static str, rank: u32, cap: u32 },

    #[error("minimal quotient slope of {which} exceeds the bundle slope")]
    SlopeAboveBundleSlope { which: &'static str },

    #[error("ring classes belong to different spaces")]
    SpaceMismatch,

    #[error("expected a homogeneous class of codimension {expected}, got {found}")]
    Grade { expected: usize, found: String },

    #[error("quotient at position {index} has zero rank")]
    ZeroRankQuotient { index: usize },

    #[error("quotient slopes must be strictly increasing, violated at position {index}")]
    SlopeOrdering { index: usize },

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("{0}")]
    Invalid(String),

    #[error("normalized flag inconsistent with quotient data: {0}")]
    Normalization(String),

    #[error("bundle data inconsistent with space: {0}")]
    BundleMismatch(String),

    #[error("class is not ample: {0}")]
    NotAmple(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Hypothesis(_) => ErrorKind::Hypothesis,
            Error::Inconsistency(_) => ErrorKind::Inconsistency,
            _ => ErrorKind::Validation,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
