use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The sequence ascends between positions `index` and `index + 1` (1-based).
    #[error("sequence is not nonincreasing: ascent at index {index}")]
    NotNonincreasing { index: usize },

    #[error("summation range [{lo}, {hi}] over a sequence of length {len} mixes +inf and -inf")]
    MixedInfinities { lo: i64, hi: i64, len: usize },

    #[error("+inf and -inf cannot be added")]
    UndefinedSum,

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("index u = {u} is outside the band ({lower}, {upper}] for j = {j}")]
    IndexOutOfBand {
        u: usize,
        j: usize,
        lower: usize,
        upper: usize,
    },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("negative surplus: {0}")]
    NegativeOmega(i128),

    #[error("no prefix length absorbs the surplus {omega}")]
    InfeasibleHomogenization { omega: i128 },

    #[error("internal invariant violated: {0}")]
    InternalInvariantViolated(String),
}

pub type Result<T> = std::result::Result<T, Error>;
