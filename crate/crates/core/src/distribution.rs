//! The degenerate gamma random variable `X ~ Γ_λ(α, β)`.
//!
//! Density `f(x) = β (βx)^(α-1) (1+λβx)^(-1/λ) / Γ_λ(α)` for `x > 0`, with
//! `λ ∈ (0,1)`, `β > 0`, `0 < α < 1/λ`. `λβX` is beta-prime(α, 1/λ - α),
//! which gives the exact sampler and the closed-form distribution function.
//! `E[Xⁿ]` is finite iff `n + α < 1/λ`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma};
use serde::Serialize;

use crate::degen::{
    binom_lambda, falling_factorial_classical, falling_factorial_degen, ln_gamma_degen, DegenParam,
};
use crate::error::{domain, Error, Result};
use crate::harness::report::{inputs, VerificationReport};
use crate::num_kernel::{
    integrate_semi_infinite_with, reg_incomplete_beta, QuadratureResult, SemiInfiniteHints,
    ToleranceConfig,
};
use crate::stirling::{rational_from_f64, rational_to_f64, stirling_triangle, StirlingKind};

/// Report tolerance for [`normalization_check`].
pub const NORMALIZATION_TOLERANCE: f64 = 1e-8;

/// Validated `(α, β, λ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DistParams {
    alpha: f64,
    beta: f64,
    lambda: f64,
    #[serde(skip)]
    ln_norm: f64,
}

impl DistParams {
    pub fn new(alpha: f64, beta: f64, lambda: f64) -> Result<Self> {
        let param = DegenParam::for_gamma(lambda)?;
        if !(beta > 0.0) || !beta.is_finite() {
            return Err(domain(format!("beta must be positive, got {beta}")));
        }
        if !(alpha > 0.0) || !param.below_pole(alpha) {
            return Err(domain(format!(
                "alpha must satisfy 0 < alpha < 1/lambda = {}, got {alpha}",
                param.pole()
            )));
        }
        Ok(Self {
            alpha,
            beta,
            lambda,
            ln_norm: ln_gamma_degen(alpha, lambda)?,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Whether `E[Xⁿ]` is finite, i.e. `n + α < 1/λ`.
    pub fn moment_exists(&self, n: usize) -> bool {
        n == 0 || self.lambda * (n as f64 + self.alpha) < 1.0 - crate::degen::POLE_MARGIN
    }

    /// Tail exponent `p` of `xⁿ f(x) ~ x^-p`.
    fn tail_exponent(&self, n: usize) -> f64 {
        1.0 / self.lambda - self.alpha - n as f64 + 1.0
    }

    fn nonexistence(&self, n: usize) -> Error {
        Error::Nonexistence(format!(
            "n + alpha >= 1/lambda (n = {n}, alpha = {}, 1/lambda = {})",
            self.alpha,
            1.0 / self.lambda
        ))
    }
}

/// Density; zero for `x <= 0`, including `x = 0` when `α = 1`.
pub fn pdf(p: &DistParams, x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x <= 0.0 || x.is_infinite() {
        return 0.0;
    }
    let y = p.beta * x;
    let log_kernel = if p.alpha == 1.0 {
        0.0
    } else {
        (p.alpha - 1.0) * y.ln()
    };
    (p.beta.ln() + log_kernel - (p.lambda * y).ln_1p() / p.lambda - p.ln_norm).exp()
}

/// Distribution function `I_z(α, 1/λ - α)` with `z = λβx / (1 + λβx)`.
pub fn cdf(p: &DistParams, x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(domain("cdf of NaN"));
    }
    if x <= 0.0 {
        return Ok(0.0);
    }
    if x.is_infinite() {
        return Ok(1.0);
    }
    let y = p.lambda * p.beta * x;
    reg_incomplete_beta(y / (1.0 + y), p.alpha, 1.0 / p.lambda - p.alpha)
}

/// `∫₀^∞ xⁿ f(x) dx` by quadrature.
pub fn moment_quadrature(
    p: &DistParams,
    n: usize,
    cfg: &ToleranceConfig,
) -> Result<QuadratureResult> {
    if !p.moment_exists(n) {
        return Err(p.nonexistence(n));
    }
    let hints = SemiInfiniteHints {
        tail_exponent: Some(p.tail_exponent(n)),
        origin_exponent: Some(p.alpha - 1.0 + n as f64),
    };
    integrate_semi_infinite_with(|x| x.powi(n as i32) * pdf(p, x), hints, cfg)
}

/// Quadrature of the density over `(0, ∞)` compared against 1.
pub fn normalization_check(p: &DistParams, cfg: &ToleranceConfig) -> Result<VerificationReport> {
    let total = moment_quadrature(p, 0, cfg)?;
    Ok(VerificationReport::real(
        format!("normalization/a={}/b={}/l={}", p.alpha, p.beta, p.lambda),
        inputs([("alpha", p.alpha), ("beta", p.beta), ("lambda", p.lambda)]),
        1.0,
        total.value,
        NORMALIZATION_TOLERANCE,
    ))
}

/// `E[Xⁿ]`, present only when the moment exists.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentValue {
    pub order: usize,
    /// Present exactly when `exists`.
    pub value: Option<f64>,
    pub exists: bool,
}

/// `E[Xⁿ] = β⁻ⁿ (n+α-1 choose n) / ((1-λ(α+1)) choose n)_λ`.
pub fn moment(p: &DistParams, n: usize) -> MomentValue {
    if !p.moment_exists(n) {
        return MomentValue {
            order: n,
            value: None,
            exists: false,
        };
    }
    // both binomials carry 1/n!; the ratio of falling factorials avoids it
    let numerator = falling_factorial_classical(n as f64 + p.alpha - 1.0, n);
    let denominator = falling_factorial_degen(1.0 - p.lambda * (p.alpha + 1.0), n, p.lambda);
    MomentValue {
        order: n,
        value: Some(p.beta.powi(-(n as i32)) * numerator / denominator),
        exists: true,
    }
}

/// `(n+α-1 choose n) / ((1-λ(α+1)) choose n)_λ` through the binomials
/// themselves; agrees with [`moment`] at `β = 1` for small `n`.
pub fn moment_via_binomials(p: &DistParams, n: usize) -> Option<f64> {
    if !p.moment_exists(n) {
        return None;
    }
    let upper = binom_lambda(n as f64 + p.alpha - 1.0, n, 1.0);
    let lower = binom_lambda(1.0 - p.lambda * (p.alpha + 1.0), n, p.lambda);
    Some(p.beta.powi(-(n as i32)) * upper / lower)
}

/// `E[X] = α / (β (1 - λ(α+1)))`.
pub fn mean(p: &DistParams) -> Result<f64> {
    if !p.moment_exists(1) {
        return Err(p.nonexistence(1));
    }
    Ok(p.alpha / (p.beta * (1.0 - p.lambda * (p.alpha + 1.0))))
}

/// `Var X = (α/β²) (1-λ) / ((1-λ(α+1))² (1-λ(α+2)))`.
pub fn variance(p: &DistParams) -> Result<f64> {
    if !p.moment_exists(2) {
        return Err(p.nonexistence(2));
    }
    let first = 1.0 - p.lambda * (p.alpha + 1.0);
    let second = 1.0 - p.lambda * (p.alpha + 2.0);
    Ok(p.alpha / (p.beta * p.beta) * (1.0 - p.lambda) / (first * first * second))
}

/// Exact sampler `X = G₁ / (λβ G₂)`, `G₁ ~ Gamma(α)`, `G₂ ~ Gamma(1/λ - α)`.
#[derive(Debug, Clone, Copy)]
pub struct Sampler {
    numerator: Gamma<f64>,
    denominator: Gamma<f64>,
    scale: f64,
}

impl Sampler {
    pub fn new(p: &DistParams) -> Self {
        let shape = |k: f64| Gamma::new(k, 1.0).expect("validated shape is positive and finite");
        Self {
            numerator: shape(p.alpha),
            denominator: shape(1.0 / p.lambda - p.alpha),
            scale: 1.0 / (p.lambda * p.beta),
        }
    }

    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        loop {
            let x = self.numerator.sample(rng) / self.denominator.sample(rng) * self.scale;
            // Gamma(α < 1) can underflow to 0
            if x > 0.0 && x.is_finite() {
                return x;
            }
        }
    }
}

impl Distribution<f64> for Sampler {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        self.draw(rng)
    }
}

/// `n` i.i.d. variates; deterministic for a given rng state.
pub fn sample<R: Rng + ?Sized>(p: &DistParams, rng: &mut R, n: usize) -> Vec<f64> {
    let sampler = Sampler::new(p);
    (0..n).map(|_| sampler.draw(rng)).collect()
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Independent stream `stream` of a root seed:
/// `ChaCha8(splitmix64(root ^ splitmix64(stream)))`.
pub fn stream_rng(root_seed: u64, stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splitmix64(root_seed ^ splitmix64(stream)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SampleSummary {
    pub count: usize,
    pub mean: f64,
    pub variance: f64,
    pub standard_error_mean: f64,
    pub ks_statistic: f64,
}

/// `sup_x |F_n(x) - F(x)|` of the samples against `cdf`.
pub fn ks_statistic<F>(samples: &[f64], cdf: F) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let mut sup: f64 = 0.0;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x)?;
        sup = sup.max(f - i as f64 / n).max((i + 1) as f64 / n - f);
    }
    Ok(sup)
}

/// Sample mean, unbiased variance, standard error and KS distance to `p`.
pub fn summarize(p: &DistParams, samples: &[f64]) -> Result<SampleSummary> {
    if samples.is_empty() {
        return Err(domain("cannot summarize an empty sample"));
    }
    let (mean, variance) = mean_and_variance(samples);
    Ok(SampleSummary {
        count: samples.len(),
        mean,
        variance,
        standard_error_mean: (variance / samples.len() as f64).sqrt(),
        ks_statistic: ks_statistic(samples, |x| cdf(p, x))?,
    })
}

/// Mean and unbiased variance by Welford's update.
pub fn mean_and_variance(values: &[f64]) -> (f64, f64) {
    let mut mean = 0.0;
    let mut m2 = 0.0;
    for (i, &v) in values.iter().enumerate() {
        let delta = v - mean;
        mean += delta / (i + 1) as f64;
        m2 += delta * (v - mean);
    }
    let variance = if values.len() > 1 {
        m2 / (values.len() - 1) as f64
    } else {
        0.0
    };
    (mean, variance)
}

/// `(1-λ) / ((1-nλ)(1-(n+1)λ))`, the coefficient of `tⁿ` in
/// `E[e_λ(Xt)]` for `X ~ Γ_λ(1, 1)`.
pub fn degen_mgf_coefficient(n: usize, lambda: f64) -> Result<f64> {
    let param = DegenParam::for_gamma(lambda)?;
    if !param.below_pole(n as f64 + 1.0) {
        return Err(domain(format!(
            "mgf coefficient requires n + 1 < 1/lambda (n = {n}, 1/lambda = {})",
            param.pole()
        )));
    }
    let n = n as f64;
    Ok((1.0 - lambda) / ((1.0 - n * lambda) * (1.0 - (n + 1.0) * lambda)))
}

/// `E[(X₁ + ⋯ + X_r)ⁿ]` for independent `Xᵢ ~ Γ_λ(αᵢ, β)` sharing β and λ,
/// summed over all compositions `l₁ + ⋯ + l_r = n`.
pub fn sum_moment(params: &[DistParams], n: usize) -> Result<f64> {
    let first = params
        .first()
        .ok_or_else(|| domain("sum_moment needs at least one variable"))?;
    for p in params {
        if p.beta != first.beta || p.lambda != first.lambda {
            return Err(Error::ParameterMismatch(format!(
                "all variables must share beta and lambda; got (beta={}, lambda={}) and \
                 (beta={}, lambda={})",
                first.beta, first.lambda, p.beta, p.lambda
            )));
        }
        if !p.moment_exists(n) {
            return Err(p.nonexistence(n));
        }
    }
    // unit-scale moments E[Xᵢ^l] for l <= n
    let unit: Vec<Vec<f64>> = params
        .iter()
        .map(|p| {
            let unit = DistParams { beta: 1.0, ..*p };
            (0..=n)
                .map(|l| moment(&unit, l).value.expect("existence checked above"))
                .collect()
        })
        .collect();

    let mut total = 0.0;
    let mut parts = vec![0; params.len()];
    for_each_composition(n, &mut parts, 0, &mut |parts| {
        let mut remaining = n;
        let mut term = 1.0;
        for (i, &l) in parts.iter().enumerate() {
            term *= binomial(remaining, l) * unit[i][l];
            remaining -= l;
        }
        total += term;
    });
    Ok(first.beta.powi(-(n as i32)) * total)
}

fn for_each_composition(
    remaining: usize,
    parts: &mut [usize],
    index: usize,
    visit: &mut dyn FnMut(&[usize]),
) {
    if index + 1 == parts.len() {
        parts[index] = remaining;
        visit(parts);
        return;
    }
    for l in 0..=remaining {
        parts[index] = l;
        for_each_composition(remaining - l, parts, index + 1, visit);
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

/// `E[(X)_{n,λ}]` computed twice for one `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FactorialMomentRow {
    pub n: usize,
    /// `Σ_l Σ_m S_{2,λ}(n,l) S_1(l,m) E[X^m]` with exact triangles.
    pub stirling_path: f64,
    /// `∫ (x)_{n,λ} f(x) dx`.
    pub quadrature_path: f64,
    pub quadrature_error_estimate: f64,
}

/// Degenerate factorial moments `E[(X)_{n,λ}]`, `n <= n_max`, for `β = 1`.
///
/// The triangles are built for the exact binary value of λ.
pub fn factorial_moment_expansion(
    p: &DistParams,
    n_max: usize,
    cfg: &ToleranceConfig,
) -> Result<Vec<FactorialMomentRow>> {
    if p.beta != 1.0 {
        return Err(Error::ParameterMismatch(format!(
            "factorial moment expansion requires beta = 1, got {}",
            p.beta
        )));
    }
    if !p.moment_exists(n_max) {
        return Err(p.nonexistence(n_max));
    }
    let lambda = rational_from_f64(p.lambda)?;
    let s2_lambda = stirling_triangle(StirlingKind::DegenerateSecond, &lambda, n_max);
    let s1 = stirling_triangle(StirlingKind::ClassicalFirst, &lambda, n_max);
    let moments: Vec<f64> = (0..=n_max)
        .map(|m| moment(p, m).value.expect("existence checked above"))
        .collect();

    (0..=n_max)
        .map(|n| {
            let mut stirling_path = 0.0;
            for l in 0..=n {
                for (m, mu) in moments.iter().enumerate().take(l + 1) {
                    let coeff = s2_lambda.row(n)[l].clone() * &s1.row(l)[m];
                    stirling_path += rational_to_f64(&coeff) * mu;
                }
            }
            let hints = SemiInfiniteHints {
                tail_exponent: Some(p.tail_exponent(n)),
                origin_exponent: Some(p.alpha - 1.0),
            };
            let quad = integrate_semi_infinite_with(
                |x| falling_factorial_degen(x, n, p.lambda) * pdf(p, x),
                hints,
                cfg,
            )?;
            Ok(FactorialMomentRow {
                n,
                stirling_path,
                quadrature_path: quad.value,
                quadrature_error_estimate: quad.abs_error_estimate,
            })
        })
        .collect()
}
