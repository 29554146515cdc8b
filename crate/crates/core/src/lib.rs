//! Degenerate gamma function, degenerate Stirling numbers and the degenerate
//! gamma distribution, with independent oracles for every closed form.
//!
//! The crate is organised bottom-up:
//!
//! * [`num_kernel`]: classical Γ, B, I_z and semi-infinite adaptive quadrature.
//! * [`degen`]: `e_λ^x(t)`, `log_λ`, degenerate falling factorials and `Γ_λ(s)`.
//! * [`stirling`]: exact rational Stirling triangles and the identity checker.
//! * [`distribution`]: the `Γ_λ(α, β)` random variable.
//! * [`harness`]: verification reports and the named check suites.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// reference values in tests carry every digit the oracle printed
#![cfg_attr(test, allow(clippy::excessive_precision, clippy::approx_constant))]

pub mod degen;
pub mod distribution;
mod error;
pub mod harness;
pub mod num_kernel;
pub mod stirling;

pub use degen::{
    binom_lambda, exp_degen, exp_degen_series, falling_factorial_classical,
    falling_factorial_degen, gamma_degen, gamma_degen_iterated, gamma_degen_quadrature,
    gamma_degen_recurrence_step, gamma_degen_with, ln_gamma_degen, log_degen, DegenParam,
    GammaLambdaValue, GammaMethod, SeriesSum,
};
pub use distribution::{
    cdf, degen_mgf_coefficient, factorial_moment_expansion, mean, moment, normalization_check, pdf,
    sample, stream_rng, sum_moment, summarize, variance, DistParams, FactorialMomentRow,
    MomentValue, SampleSummary, Sampler,
};
pub use error::{Error, Result};
pub use harness::{ReportValue, RunConfig, SuiteSummary, VerificationReport};
pub use num_kernel::{
    beta_classical, gamma_classical, integrate_semi_infinite, reg_incomplete_beta,
    QuadratureResult, ToleranceConfig,
};
pub use stirling::{
    check_inversion, identity_lhs, identity_rhs, stirling_triangle, RationalScalar, StirlingKind,
    StirlingTriangle,
};
