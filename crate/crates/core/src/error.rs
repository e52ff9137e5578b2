use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("not a rational literal: {0:?}")]
    RationalSyntax(String),

    /// A lazily checked invariant failed at the given index. This means the
    /// value was built from a broken rule, not that evaluation can recover.
    #[error("malformed {kind} at index {index}: {detail}")]
    Malformed {
        kind: &'static str,
        index: usize,
        detail: String,
    },

    #[error("thresholds must be strictly ascending (position {0})")]
    NonAscending(usize),

    #[error("{0} must not be empty")]
    Empty(&'static str),

    #[error("precondition failed at index {index}: {detail}")]
    Precondition { index: usize, detail: String },

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("expected a positive rational, got {0}")]
    NotPositive(String),

    #[error("degenerate probe: {0}")]
    DegenerateProbe(String),

    #[error("invalid interval: {0}")]
    InvalidInterval(String),

    #[error("bad record: {0}")]
    Record(String),
}
