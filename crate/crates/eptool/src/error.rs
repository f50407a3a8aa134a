//! Crate-wide error type.

use thiserror::Error;

/// Errors raised by the numerical core and the analysis layer.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("matrix is not square: {0}x{1}")]
    NotSquare(usize, usize),

    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    DimMismatch(usize, usize, usize, usize),

    #[error("non-finite entries in input")]
    NonFinite,

    #[error("matrix exponential overflowed (input 1-norm {norm:.3e})")]
    ExpmOverflow { norm: f64 },

    #[error("matrix is not Hermitian (deviation {deviation:.3e}, tolerance {tolerance:.3e})")]
    NotHermitian { deviation: f64, tolerance: f64 },

    #[error("eigenvalue iteration did not converge for {context}")]
    EigenConvergence { context: String },

    #[error("matrix is singular or near-singular (condition estimate {estimate:.3e})")]
    Singular { estimate: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("analytic formulas are unavailable for custom Hamiltonians")]
    CustomModel,

    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("not a valid density matrix: {0}")]
    InvalidDensity(String),

    #[error("state norm underflow ({norm:.3e}); cannot renormalize")]
    StateExtinction { norm: f64 },

    #[error(
        "Hamiltonian is near-defective (eigenvector condition {estimate:.3e}); \
         use the exponential propagator instead of the eigen-expansion"
    )]
    NearDefective { estimate: f64 },

    #[error(
        "time window too short to classify: series has neither recurred nor decayed \
         (last/max = {ratio:.3}); rerun with a longer grid"
    )]
    WindowTooShort { ratio: f64 },

    #[error("bracket endpoints give the same verdict ({verdict}); no phase boundary inside")]
    DegenerateBracket { verdict: String },

    #[error(
        "scan probe at {probe} stayed inconclusive after maximum window growth; \
         last bracket [{lo}, {hi}]"
    )]
    ScanInconclusive { probe: f64, lo: f64, hi: f64 },

    #[error("fewer than two recurrences in the window; extend the grid")]
    InsufficientRecurrences,
}

pub type Result<T> = std::result::Result<T, Error>;
