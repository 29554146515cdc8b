use thiserror::Error;

use crate::num_kernel::QuadratureResult;

/// Errors raised by every evaluation path in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("overflow: {0}")]
    Overflow(String),

    /// `1 + lambda * t <= 0`, outside the principal real branch of `e_lambda`.
    #[error("branch error: 1 + lambda*t = {base} <= 0")]
    Branch { base: f64 },

    #[error(
        "quadrature did not converge: best estimate {} (error estimate {}, {} evaluations)",
        .0.value, .0.abs_error_estimate, .0.evaluations
    )]
    NonConvergence(QuadratureResult),

    #[error("{what} did not converge after {iterations} iterations")]
    IterationLimit {
        what: &'static str,
        iterations: usize,
    },

    #[error("divergent integral: tail exponent {0} <= 1")]
    Divergent(f64),

    #[error("moment does not exist: {0}")]
    Nonexistence(String),

    #[error("singular denominator: lambda-binomial factor vanishes at j = {j}")]
    SingularDenominator { j: usize },

    #[error("parameter mismatch: {0}")]
    ParameterMismatch(String),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
