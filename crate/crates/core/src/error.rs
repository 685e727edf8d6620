//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by constructors, analytic formulas, and the optimizer.
#[derive(Debug, Error)]
pub enum Error {
    /// A Bloch vector left the unit ball by more than the clamp tolerance.
    #[error("bloch vector norm {norm} exceeds 1")]
    BlochNorm { norm: f64 },

    /// A measurement effect has an eigenvalue outside [0, 1].
    #[error("effect eigenvalues [{lo}, {hi}] fall outside [0, 1]")]
    EffectEigenvalues { lo: f64, hi: f64 },

    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// No optimizer restart converged.
    #[error("optimizer failed to converge: {0}")]
    ConvergenceFailure(String),

    /// No optimizer restart produced a point satisfying the witness constraint.
    #[error("witness constraint infeasible: {0}")]
    ConstraintInfeasible(String),

    /// Input text could not be parsed at all.
    #[error("parse error: {0}")]
    Parse(String),

    /// Input parsed but failed semantic validation.
    #[error("invalid {field}: {reason}")]
    Validation { field: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
