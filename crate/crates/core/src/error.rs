use thiserror::Error;

/// Errors raised by the core routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(
        "invalid mode partition (n_A = {n_a}, n_B = {n_b}): both subsystems need at least one mode"
    )]
    InvalidPartition { n_a: usize, n_b: usize },

    #[error("matrix is {rows}x{cols}, expected a square matrix of even dimension")]
    BadShape { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not symmetric (relative asymmetry {residual:e})")]
    NotSymmetric { residual: f64 },

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    #[error(
        "quantum condition violated: smallest symplectic eigenvalue {nu_min} < hbar/2 = {bound}"
    )]
    QuantumConditionViolated { nu_min: f64, bound: f64 },

    #[error("matrix is not symplectic (relative residual {residual:e})")]
    NotSymplectic { residual: f64 },

    #[error("matrix is not orthosymplectic (relative residual {residual:e})")]
    NotOrthosymplectic { residual: f64 },

    #[error("hbar mismatch: {left} vs {right}")]
    HbarMismatch { left: f64, right: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("non-finite input")]
    NonFinite,

    #[error("block canonicalization failed: {0}")]
    Canonicalization(String),

    #[error("reciprocal eigenvalue pairing failed: {0}")]
    Pairing(String),

    #[error("verification failed at stage `{stage}`: {quantity} = {value:e} exceeds {limit:e}")]
    Verification {
        stage: &'static str,
        quantity: &'static str,
        value: f64,
        limit: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
