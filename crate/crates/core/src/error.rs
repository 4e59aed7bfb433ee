//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain is empty")]
    EmptyDomain,

    #[error("interval has non-positive length: [{left}, {right})")]
    NonPositiveInterval { left: String, right: String },

    #[error("intervals overlap at [{left}, {right})")]
    OverlappingIntervals { left: String, right: String },

    #[error("domain must be normalized (leftmost point 0, measure 1); got leftmost {leftmost}, measure {measure}")]
    NotNormalized { leftmost: String, measure: String },

    #[error("value must be positive: {0}")]
    NonPositive(String),

    #[error("not a valid rational: {0:?}")]
    BadRational(String),

    #[error("duplicate point {0}")]
    DuplicatePoint(String),

    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("offset {0} outside [0, period)")]
    OffsetOutOfRange(String),

    #[error("window too small: {0}")]
    WindowTooSmall(String),

    #[error("invalid range: lo {lo} must be below hi {hi}")]
    InvalidRange { lo: String, hi: String },

    #[error("sample span {span} is shorter than window length {window}")]
    SpanTooShort { span: String, window: String },

    #[error("domain does not {d}-tile the line")]
    NotATiling { d: String },

    #[error("vectors have mismatched dimension: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("orthogonality precondition failed for pair ({0}, {1})")]
    NotMutuallyNull(String, String),

    #[error("basis does not span the sample: basis rank {basis_rank}, sample rank {sample_rank}")]
    BasisDoesNotSpan {
        basis_rank: usize,
        sample_rank: usize,
    },

    #[error("translated basis point {0} is missing from the sample")]
    TranslateMissing(String),

    #[error("basis point {0} is not in the sample")]
    BasisNotInSample(String),

    #[error("root-of-unity order {order} exceeds supported limit {limit}")]
    OrderTooLarge { order: String, limit: u64 },

    #[error("division by zero in cyclotomic field")]
    DivisionByZero,

    #[error("malformed JSON: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
