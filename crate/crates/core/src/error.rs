use thiserror::Error;

/// Errors raised by validation, the numerical routines and configuration parsing.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("malformed matrix: {0}")]
    MalformedMatrix(String),

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not Hermitian: max |M_ij - conj(M_ji)| = {deviation:e} exceeds {tolerance:e}")]
    NotHermitian { deviation: f64, tolerance: f64 },

    #[error("trace is {trace}, expected 1 within {tolerance:e}")]
    TraceNotOne { trace: f64, tolerance: f64 },

    #[error("tangent is not traceless: |trace| = {trace:e} exceeds {tolerance:e}")]
    NotTraceless { trace: f64, tolerance: f64 },

    #[error("state is not positive definite: eigenvalue p_{index} = {value:e} is below the floor {floor:e}")]
    NotPositiveDefinite { index: usize, value: f64, floor: f64 },

    #[error("argument must be strictly positive, got {0}")]
    NonPositiveArgument(f64),

    #[error("beta must lie in [-1, 1], got {0}")]
    BetaOutOfRange(f64),

    #[error("invalid probability distribution: {0}")]
    InvalidDistribution(String),

    #[error("mean superoperator is singular")]
    SingularSuperoperator,

    #[error("SLD coherent product (Δ^SLD A_C)^2 I^SLD_C = {0:e} is too small to form a ratio")]
    DegenerateCoherentTerm(f64),

    #[error("tangent vanishes; saturation is undefined")]
    ZeroTangent,

    #[error("centered observable vanishes; saturation is undefined")]
    ZeroObservable,

    #[error("eigenvalues p_{j} = {p_j} and p_{k} = {p_k} are degenerate but A_{j}{k} is nonzero")]
    DegenerateEigenvalues { j: usize, k: usize, p_j: f64, p_k: f64 },

    #[error("observable has no coherent part in the eigenbasis of the state")]
    ZeroObservableCoherence,

    #[error("time must be non-negative, got {0}")]
    NegativeTime(f64),

    #[error("state drifted by {drift:e} at t = {time}; the integration step is too coarse")]
    StateValidationDrift { time: f64, drift: f64 },

    #[error("window {window} holds {samples} samples; at least 3 within the trajectory span are required")]
    WindowTooShort { window: f64, samples: usize },

    #[error("bound violated: {what} ({lhs:e} > {rhs:e})")]
    BoundViolation { what: String, lhs: f64, rhs: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Whether the error stems from user configuration rather than numerics.
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            Error::Config(_) | Error::InvalidParameter(_) | Error::BetaOutOfRange(_) | Error::MalformedMatrix(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
