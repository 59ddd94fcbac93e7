use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix dimension must be positive")]
    InvalidDimension,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: String, got: String },

    #[error("k-commutator needs at least 2 arguments, got {0}")]
    TooFewArguments(usize),

    #[error("exponent vector has length {got}, expected {expected}")]
    BadExponentLength { expected: usize, got: usize },

    #[error("negative exponent {0} in monomial integral")]
    NegativeExponent(i64),

    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),

    #[error("bracket table has arity {table}, called with {given} arguments")]
    ArityMismatch { table: usize, given: usize },

    #[error("quadrature resolution {0} too small (need >= 8 points per angle)")]
    ResolutionTooSmall(usize),

    #[error("cutoff must be >= 1")]
    InvalidCutoff,

    #[error("unsupported sphere dimension {0} (supported: 2, 3, 4)")]
    UnsupportedSphereDim(usize),

    #[error("gamma family needs n >= 2, got {0}")]
    GammaTooSmall(usize),

    #[error("matrix family too small for cutoff {cutoff}: {modes} modes need 2n >= {modes}, i.e. n >= {required_n} (got n = {n})")]
    Capacity {
        cutoff: usize,
        modes: usize,
        required_n: usize,
        n: usize,
    },

    #[error("quantum 3-bracket requires a gamma-family context")]
    MissingGammaContext,

    #[error("manifold/kind combination not supported: {0}")]
    UnsupportedBracketKind(String),

    #[error("sizes must be strictly increasing")]
    SizesNotIncreasing,

    #[error("slope fit needs at least 3 sizes, got {0}")]
    TooFewSizes(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
