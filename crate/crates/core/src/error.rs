use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("indeterminate root set: zero polynomial")]
    IndeterminateRootSet,

    #[error("not real on circle: Laurent polynomial is not bar-symmetric")]
    NotRealOnCircle,

    #[error("matrix is not hermitian")]
    NotHermitian,

    #[error("matrix is not anti-hermitian")]
    NotAntiHermitian,

    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("sign determination exceeded the precision ceiling of {0} bits")]
    PrecisionExhausted(u32),

    #[error("sign tuple must be nonempty")]
    EmptySignTuple,

    #[error("invalid root of unity order d=0")]
    ZeroOrder,

    #[error("index k={k} out of range for order d={d}")]
    IndexOutOfRange { k: i64, d: i64 },

    #[error("not a rational homology sphere: surgery linking matrix is singular")]
    NotRationalHomologySphere,

    #[error("type vector has a zero entry at position {0}")]
    ZeroTypeEntry(usize),

    #[error("type vector entries are not coprime")]
    TypeNotCoprime,

    #[error("meridian matrix is singular")]
    SingularMeridianMatrix,

    #[error("complexity must be nonzero")]
    ZeroComplexity,

    #[error("formula hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("identity check failed: {0}")]
    IdentityViolated(String),

    #[error("angle is not exactly representable: {0}")]
    Unrepresentable(String),

    #[error("incompatible links: {0}")]
    Incompatible(String),

    #[error("invalid primes: {0}")]
    InvalidPrimes(String),
}

pub type Result<T> = std::result::Result<T, Error>;
