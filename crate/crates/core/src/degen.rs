//! Degenerate exponential and logarithm, degenerate falling factorials,
//! λ-binomials and the degenerate gamma function `Γ_λ(s)`.
//!
//! `Γ_λ(s) = ∫₀^∞ (1+λt)^(-1/λ) t^(s-1) dt` is finite exactly for
//! `0 < s < 1/λ`. It has three independent evaluation paths:
//!
//! * integer closed form `Γ(k) / (1)_{k+1,λ}`;
//! * Beta closed form `λ^-s B(s, 1/λ - s)` (substitute `u = λt`);
//! * direct quadrature of the defining integral.
//!
//! A fourth path chains the recurrence `Γ_λ(s+1) = s Γ_λ(s) / (1 - λ(s+1))`
//! up from the fractional part of `s`.

use std::fmt;

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::num_kernel::{
    beta_classical, gamma_classical, integrate_semi_infinite_with, QuadratureResult,
    SemiInfiniteHints, ToleranceConfig,
};

/// Arguments closer to the pole `1/λ` than this relative margin are rejected.
pub const POLE_MARGIN: f64 = 1e-12;

/// The deformation parameter λ.
///
/// `e_λ` and the falling factorials accept any non-zero real λ; `Γ_λ` and the
/// distribution need `λ ∈ (0, 1)`. The two regimes have separate constructors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DegenParam {
    lambda: f64,
}

impl DegenParam {
    /// λ for `e_λ` / `log_λ`: any finite non-zero real.
    pub fn nonzero(lambda: f64) -> Result<Self> {
        if !lambda.is_finite() || lambda == 0.0 {
            return Err(domain(format!(
                "lambda must be finite and non-zero, got {lambda}"
            )));
        }
        Ok(Self { lambda })
    }

    /// λ for `Γ_λ` and the distribution: `0 < λ < 1`.
    pub fn for_gamma(lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda < 1.0) {
            return Err(domain(format!("lambda must lie in (0, 1), got {lambda}")));
        }
        Ok(Self { lambda })
    }

    pub fn value(self) -> f64 {
        self.lambda
    }

    pub fn is_gamma_admissible(self) -> bool {
        self.lambda > 0.0 && self.lambda < 1.0
    }

    /// `1/λ`, the upper end of the `Γ_λ` domain.
    pub fn pole(self) -> f64 {
        1.0 / self.lambda
    }

    /// Whether `s < (1/λ)(1 - POLE_MARGIN)`.
    pub fn below_pole(self, s: f64) -> bool {
        s * self.lambda < 1.0 - POLE_MARGIN
    }
}

/// How a [`GammaLambdaValue`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GammaMethod {
    IntegerClosedForm,
    BetaClosedForm,
    Quadrature,
    Recurrence,
}

impl fmt::Display for GammaMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GammaMethod::IntegerClosedForm => "integer_closed_form",
            GammaMethod::BetaClosedForm => "beta_closed_form",
            GammaMethod::Quadrature => "quadrature",
            GammaMethod::Recurrence => "recurrence",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GammaLambdaValue {
    pub s: f64,
    pub lambda: f64,
    pub value: f64,
    pub method: GammaMethod,
}

/// `(x)_{n,λ} = x (x-λ) ⋯ (x-(n-1)λ)`; the empty product is 1.
pub fn falling_factorial_degen(x: f64, n: usize, lambda: f64) -> f64 {
    (0..n).map(|j| x - j as f64 * lambda).product()
}

/// `(x)_n = x (x-1) ⋯ (x-n+1)`.
pub fn falling_factorial_classical(x: f64, n: usize) -> f64 {
    falling_factorial_degen(x, n, 1.0)
}

/// λ-binomial coefficient `(x)_{n,λ} / n!`.
pub fn binom_lambda(x: f64, n: usize, lambda: f64) -> f64 {
    (0..n)
        .map(|j| (x - j as f64 * lambda) / (j + 1) as f64)
        .product()
}

/// `e_λ^x(t) = (1 + λt)^(x/λ)` on the principal real branch.
pub fn exp_degen(x: f64, t: f64, lambda: f64) -> Result<f64> {
    let lambda = DegenParam::nonzero(lambda)?.value();
    let base = 1.0 + lambda * t;
    if !(base > 0.0) {
        return Err(Error::Branch { base });
    }
    Ok((x / lambda * (lambda * t).ln_1p()).exp())
}

/// Partial sum of a power series together with whether the full series is
/// known to converge at that point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesSum {
    pub value: f64,
    pub terms: usize,
    /// `false` when `|λt| >= 1`; the partial sum is still returned.
    pub convergent: bool,
}

/// `Σ_{n<terms} (x)_{n,λ} tⁿ / n!`.
pub fn exp_degen_series(x: f64, t: f64, lambda: f64, terms: usize) -> SeriesSum {
    let mut term = 1.0;
    let mut sum = 0.0;
    for n in 0..terms {
        sum += term;
        term *= (x - n as f64 * lambda) * t / (n + 1) as f64;
    }
    SeriesSum {
        value: sum,
        terms,
        convergent: (lambda * t).abs() < 1.0,
    }
}

/// `log_λ(t) = (t^λ - 1) / λ`, the compositional inverse of `e_λ(t)`.
pub fn log_degen(t: f64, lambda: f64) -> Result<f64> {
    let lambda = DegenParam::nonzero(lambda)?.value();
    if !(t > 0.0) {
        return Err(domain(format!("log_lambda requires t > 0, got {t}")));
    }
    Ok((lambda * t.ln()).exp_m1() / lambda)
}

fn check_gamma_args(s: f64, lambda: f64) -> Result<DegenParam> {
    let param = DegenParam::for_gamma(lambda)?;
    if !(s > 0.0) || !s.is_finite() {
        return Err(domain(format!("gamma_lambda requires s > 0, got {s}")));
    }
    if !param.below_pole(s) {
        return Err(domain(format!(
            "gamma_lambda requires s < 1/lambda = {}, got s = {s}",
            param.pole()
        )));
    }
    Ok(param)
}

/// `Γ_λ(s)` by the default method: the integer closed form for integer `s`,
/// the Beta closed form otherwise.
pub fn gamma_degen(s: f64, lambda: f64) -> Result<GammaLambdaValue> {
    let method = if s.fract() == 0.0 {
        GammaMethod::IntegerClosedForm
    } else {
        GammaMethod::BetaClosedForm
    };
    gamma_degen_with(s, lambda, method)
}

/// `Γ_λ(s)` by an explicit method.
pub fn gamma_degen_with(s: f64, lambda: f64, method: GammaMethod) -> Result<GammaLambdaValue> {
    check_gamma_args(s, lambda)?;
    let value = match method {
        GammaMethod::IntegerClosedForm => integer_closed_form(s, lambda)?,
        GammaMethod::BetaClosedForm => beta_closed_form(s, lambda)?,
        GammaMethod::Quadrature => {
            gamma_degen_quadrature(s, lambda, &ToleranceConfig::default())?.value
        }
        GammaMethod::Recurrence => {
            let mut base = s.fract();
            if base == 0.0 {
                base = 1.0;
            }
            let steps = (s - base).round() as usize;
            gamma_degen_iterated(steps, base, lambda)?
        }
    };
    Ok(GammaLambdaValue {
        s,
        lambda,
        value,
        method,
    })
}

fn integer_closed_form(s: f64, lambda: f64) -> Result<f64> {
    if s.fract() != 0.0 {
        return Err(domain(format!(
            "integer closed form needs an integer argument, got {s}"
        )));
    }
    let k = s as usize;
    let denominator = falling_factorial_degen(1.0, k + 1, lambda);
    // k < 1/λ keeps every factor 1 - jλ (j <= k) positive
    debug_assert!(denominator > 0.0);
    Ok(gamma_classical(s)? / denominator)
}

fn beta_closed_form(s: f64, lambda: f64) -> Result<f64> {
    let b = 1.0 / lambda - s;
    if b < 1.0 {
        return Ok(lambda.powf(-s) * beta_classical(s, b)?);
    }
    Ok((-s * lambda.ln() + crate::num_kernel::ln_beta(s, b)?).exp())
}

/// `ln Γ_λ(s)` from the Beta closed form; finite even where `Γ_λ(s)`
/// itself overflows (large `s` with small λ).
pub fn ln_gamma_degen(s: f64, lambda: f64) -> Result<f64> {
    check_gamma_args(s, lambda)?;
    Ok(-s * lambda.ln() + crate::num_kernel::ln_beta(s, 1.0 / lambda - s)?)
}

/// Direct quadrature of the defining integral of `Γ_λ(s)`.
pub fn gamma_degen_quadrature(
    s: f64,
    lambda: f64,
    cfg: &ToleranceConfig,
) -> Result<QuadratureResult> {
    check_gamma_args(s, lambda)?;
    let hints = SemiInfiniteHints {
        tail_exponent: Some(1.0 / lambda - s + 1.0),
        origin_exponent: Some(s - 1.0),
    };
    integrate_semi_infinite_with(
        |t| (-(lambda * t).ln_1p() / lambda + (s - 1.0) * t.ln()).exp(),
        hints,
        cfg,
    )
}

/// One step of `Γ_λ(s+1) = s Γ_λ(s) / (1 - λ(s+1))`.
pub fn gamma_degen_recurrence_step(s: f64, lambda: f64, gamma_at_s: f64) -> Result<f64> {
    let param = DegenParam::for_gamma(lambda)?;
    if !(s > 0.0) {
        return Err(domain(format!("recurrence requires s > 0, got {s}")));
    }
    if !param.below_pole(s + 1.0) {
        return Err(domain(format!(
            "recurrence requires s + 1 < 1/lambda = {}, got s + 1 = {}",
            param.pole(),
            s + 1.0
        )));
    }
    Ok(s * gamma_at_s / (1.0 - lambda * (s + 1.0)))
}

/// `Γ_λ(n+α)` from `Γ_λ(α)` by `n` recurrence steps.
pub fn gamma_degen_iterated(n: usize, alpha: f64, lambda: f64) -> Result<f64> {
    check_gamma_args(alpha, lambda)?;
    check_gamma_args(n as f64 + alpha, lambda)?;
    (0..n).try_fold(gamma_degen(alpha, lambda)?.value, |acc, j| {
        gamma_degen_recurrence_step(alpha + j as f64, lambda, acc)
    })
}
