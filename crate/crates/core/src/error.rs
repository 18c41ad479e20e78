//! Error type shared across the crate.

use thiserror::Error;

/// Failures surfaced by the solver, the network model and the experiment
/// drivers. All variants carry enough context to name the offending input.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Operand shapes are incompatible for the requested operation.
    #[error("dimension mismatch: {0}")]
    Shape(String),

    /// A matrix that must be Hermitian is not, beyond tolerance.
    #[error("matrix is not Hermitian (max asymmetry {asymmetry:.3e})")]
    NotHermitian { asymmetry: f64 },

    /// Hermitian factorization hit a nonpositive pivot (indefinite/singular).
    #[error("Cholesky factorization failed at index {index}: smallest pivot {pivot:.6e}")]
    NotPositiveDefinite { index: usize, pivot: f64 },

    /// The QR eigensolver exceeded its sweep budget.
    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal residual {residual:.3e})")]
    EigNotConverged { sweeps: usize, residual: f64 },

    /// A Rayleigh quotient denominator was zero or nonpositive.
    #[error("zero or nonpositive denominator in Rayleigh quotient")]
    ZeroDenominator,

    /// A quadratic form that must be real carried a large imaginary residue.
    #[error("quadratic form has non-negligible imaginary part ({relative:.3e} relative)")]
    ImaginaryResidue { relative: f64 },

    /// Topology fields violate the model invariants.
    #[error("invalid topology: {0}")]
    Topology(String),

    /// A bit stream fed to the dequantizer has an impossible length.
    #[error("malformed bit stream: length {len} is not a multiple of 8")]
    MalformedBits { len: usize },

    /// Experiment or CLI configuration is invalid.
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
