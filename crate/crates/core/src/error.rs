use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension must be positive")]
    ZeroDimension,

    #[error("matrix is not Hermitian (relative residual {residual:.3e})")]
    NotHermitian { residual: f64 },

    #[error("invalid effect: {0}")]
    InvalidEffect(String),

    #[error("invalid basis: {0}")]
    InvalidBasis(String),

    #[error("invalid map: {0}")]
    InvalidMap(String),

    #[error("invalid Choi matrix: {0}")]
    InvalidChoi(String),

    #[error("invalid bipartite state: {0}")]
    InvalidState(String),

    #[error("state is not symmetric (relative residual {residual:.3e})")]
    NotSymmetric { residual: f64 },

    #[error("bilinear form is degenerate: eigenvalue {eigenvalue:.3e} below rank threshold")]
    DegenerateForm { eigenvalue: f64 },

    #[error("state is not dynamically faithful (Choi rank {rank} < {full})")]
    NotFaithful { rank: usize, full: usize },

    #[error("state is not preparationally faithful: {0}")]
    NotPreparationallyFaithful(String),

    #[error("random generation failed after {attempts} attempts")]
    GenerationFailed { attempts: usize },

    #[error("GNS Gram matrix is not positive definite")]
    NotPositive,

    #[error("invalid observable: {0}")]
    InvalidObservable(String),

    #[error("observable pool is empty")]
    EmptyPool,

    #[error("pool observables have mismatched dimensions ({expected} vs {found})")]
    PoolDimensionMismatch { expected: usize, found: usize },

    #[error("matrix is singular")]
    Singular,
}

pub type Result<T> = std::result::Result<T, Error>;
