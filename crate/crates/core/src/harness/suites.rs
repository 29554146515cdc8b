//! Named verification suites. Each suite expands into independent checks
//! which run in parallel; reports come back sorted by `check_id`.
//!
//! Monte Carlo checks draw from `stream_rng(seed, index)` where `index` is
//! the check's position in its suite, so a run is reproducible from
//! `RunConfig` alone. For these checks the tolerance is
//! `multiplier · SE / |expected|` and an override replaces the multiplier
//! (or the KS coefficient 1.63).

use std::time::Instant;

use num_traits::{Signed, Zero};
use rand::Rng;
use rayon::prelude::*;

use crate::degen::{
    falling_factorial_degen, gamma_degen, gamma_degen_quadrature, gamma_degen_with, log_degen,
    GammaMethod,
};
use crate::distribution::{
    degen_mgf_coefficient, factorial_moment_expansion, mean_and_variance, moment,
    moment_quadrature, normalization_check, pdf, sample, stream_rng, sum_moment, summarize,
    variance, DistParams, Sampler, NORMALIZATION_TOLERANCE,
};
use crate::error::{Error, Result};
use crate::harness::config::RunConfig;
use crate::harness::report::{inputs, ReportValue, VerificationReport};
use crate::num_kernel::{gamma_classical, ToleranceConfig};
use crate::stirling::{
    identity_lhs, identity_rhs, inversion_defect, log_degen_power_truncated, parse_rational,
    rational_to_f64, stirling_triangle, RationalScalar, StirlingKind,
};

/// Every suite, in the order `all` runs them.
pub const SUITE_NAMES: [&str; 11] = [
    "gamma",
    "normalization",
    "moments",
    "variance",
    "eq19",
    "eq20",
    "inversion",
    "closing-identity",
    "classical-limit",
    "sampler-ks",
    "sum-moments",
];

pub const GAMMA_TOLERANCE: f64 = 1e-8;
pub const GAMMA_UNIT_TOLERANCE: f64 = 4.0 * f64::EPSILON;
pub const MOMENTS_TOLERANCE: f64 = 1e-7;
pub const VARIANCE_TOLERANCE: f64 = 1e-12;
pub const EQ19_TOLERANCE: f64 = 1e-12;
pub const EQ20_TOLERANCE: f64 = 1e-7;
pub const LOG_SERIES_TOLERANCE: f64 = 1e-8;
pub const CLASSICAL_LIMIT_TOLERANCE: f64 = 1e-5;
pub const KS_COEFFICIENT: f64 = 1.63;
pub const SE_MULTIPLIER: f64 = 4.0;

pub const RANDOM_GAMMA_CASES: usize = 100;
pub const INVERSION_MAX_N: usize = 20;
pub const CLASSICAL_REDUCTION_MAX_N: usize = 15;
pub const CLOSING_MAX_K: usize = 8;
pub const CLASSICAL_LIMIT_LAMBDA: f64 = 1e-8;

type CheckFn = Box<dyn Fn() -> VerificationReport + Send + Sync>;

struct Check {
    id: String,
    run: CheckFn,
}

impl Check {
    fn new(
        id: impl Into<String>,
        run: impl Fn() -> VerificationReport + Send + Sync + 'static,
    ) -> Self {
        Self {
            id: id.into(),
            run: Box::new(run),
        }
    }
}

/// Runs one named suite.
pub fn run_suite(name: &str, cfg: &RunConfig) -> Result<Vec<VerificationReport>> {
    run_suite_where(name, cfg, |_| true)
}

/// Runs the checks of a suite whose `check_id` satisfies `keep`.
pub fn run_suite_where<F>(name: &str, cfg: &RunConfig, keep: F) -> Result<Vec<VerificationReport>>
where
    F: Fn(&str) -> bool,
{
    cfg.validate()?;
    let mut checks = build(name, cfg)?;
    checks.retain(|c| keep(&c.id));
    let mut reports: Vec<VerificationReport> = checks
        .par_iter()
        .map(|check| {
            let start = Instant::now();
            let report = (check.run)();
            debug_assert_eq!(report.check_id, check.id);
            report.with_runtime_ms(start.elapsed().as_secs_f64() * 1e3)
        })
        .collect();
    reports.sort_by(|a, b| a.check_id.cmp(&b.check_id));
    Ok(reports)
}

fn build(name: &str, cfg: &RunConfig) -> Result<Vec<Check>> {
    Ok(match name {
        "gamma" => gamma_suite(cfg),
        "normalization" => normalization_suite(cfg),
        "moments" => moments_suite(cfg),
        "variance" => variance_suite(cfg),
        "eq19" => eq19_suite(cfg),
        "eq20" => eq20_suite(cfg),
        "inversion" => inversion_suite(),
        "closing-identity" => closing_identity_suite(cfg),
        "classical-limit" => classical_limit_suite(cfg),
        "sampler-ks" => sampler_suite(cfg),
        "sum-moments" => sum_moments_suite(cfg),
        other => {
            return Err(Error::Parse(format!(
                "unknown suite {other:?}; known suites: {}",
                SUITE_NAMES.join(", ")
            )))
        }
    })
}

fn cell_id(p: &DistParams) -> String {
    format!("a={}/b={}/l={}", p.alpha(), p.beta(), p.lambda())
}

fn cell_inputs(p: &DistParams) -> Vec<(&'static str, String)> {
    vec![
        ("alpha", p.alpha().to_string()),
        ("beta", p.beta().to_string()),
        ("lambda", p.lambda().to_string()),
    ]
}

fn real_or_failed(
    id: String,
    inputs: std::collections::BTreeMap<String, String>,
    expected: f64,
    actual: Result<f64>,
    tol: f64,
) -> VerificationReport {
    match actual {
        Ok(actual) => VerificationReport::real(id, inputs, expected, actual, tol),
        Err(e) => VerificationReport::failed(id, inputs, expected.into(), &e, tol),
    }
}

fn gamma_suite(cfg: &RunConfig) -> Vec<Check> {
    let tol = cfg.tolerance("gamma", GAMMA_TOLERANCE);
    let unit_tol = cfg.tolerance("gamma-unit", GAMMA_UNIT_TOLERANCE);
    let mut checks = Vec::new();

    for i in 1..=9 {
        let lambda = i as f64 / 10.0;
        let id = format!("gamma/unit/l={lambda}");
        checks.push(Check::new(id.clone(), move || {
            let actual = gamma_degen(1.0, lambda).map(|v| v.value);
            real_or_failed(
                id.clone(),
                inputs([("lambda", lambda)]),
                1.0 / (1.0 - lambda),
                actual,
                unit_tol,
            )
        }));
    }

    for lambda in [0.1, 0.2, 0.3] {
        let mut k = 1;
        while (k as f64) * lambda < 1.0 {
            let id = format!("gamma/integer/l={lambda}/k={k:02}");
            let s = k as f64;
            checks.push(Check::new(id.clone(), move || {
                let ins = inputs([("lambda", lambda), ("s", s)]);
                let closed = match gamma_degen_with(s, lambda, GammaMethod::IntegerClosedForm) {
                    Ok(v) => v.value,
                    Err(e) => {
                        return VerificationReport::failed(
                            id.clone(),
                            ins,
                            ReportValue::Text("closed form".into()),
                            &e,
                            tol,
                        )
                    }
                };
                let quad =
                    gamma_degen_quadrature(s, lambda, &ToleranceConfig::default()).map(|q| q.value);
                real_or_failed(id.clone(), ins, closed, quad, tol)
            }));
            k += 1;
        }
    }

    // three-way agreement on random (s, λ)
    let mut rng = stream_rng(cfg.seed, 0);
    let seed = cfg.seed;
    for case in 0..RANDOM_GAMMA_CASES {
        let lambda: f64 = rng.random_range(0.02..0.95);
        let s: f64 = rng.random_range(0.1..0.9 / lambda);
        for method in [GammaMethod::Quadrature, GammaMethod::Recurrence] {
            let id = format!("gamma/random/{case:03}/{method}");
            checks.push(Check::new(id.clone(), move || {
                let ins = inputs([
                    ("lambda", lambda.to_string()),
                    ("s", s.to_string()),
                    ("seed", seed.to_string()),
                ]);
                let beta_form = match gamma_degen_with(s, lambda, GammaMethod::BetaClosedForm) {
                    Ok(v) => v.value,
                    Err(e) => {
                        return VerificationReport::failed(
                            id.clone(),
                            ins,
                            ReportValue::Text("beta closed form".into()),
                            &e,
                            tol,
                        )
                    }
                };
                let other = gamma_degen_with(s, lambda, method).map(|v| v.value);
                real_or_failed(id.clone(), ins, beta_form, other, tol)
            }));
        }
    }
    checks
}

fn normalization_suite(cfg: &RunConfig) -> Vec<Check> {
    let tol = cfg.tolerance("normalization", NORMALIZATION_TOLERANCE);
    cfg.grid
        .cells()
        .into_iter()
        .map(|p| {
            let id = format!("normalization/{}", cell_id(&p));
            Check::new(id.clone(), move || {
                let ins = inputs(cell_inputs(&p));
                match normalization_check(&p, &ToleranceConfig::default()) {
                    Ok(r) => VerificationReport::real(id.clone(), ins, 1.0, r.actual_f64(), tol),
                    Err(e) => VerificationReport::failed(id.clone(), ins, 1.0.into(), &e, tol),
                }
            })
        })
        .collect()
}

impl VerificationReport {
    fn actual_f64(&self) -> f64 {
        match self.actual {
            ReportValue::Real(v) => v,
            ReportValue::Text(_) => f64::NAN,
        }
    }
}

fn moments_suite(cfg: &RunConfig) -> Vec<Check> {
    let tol = cfg.tolerance("moments", MOMENTS_TOLERANCE);
    let mut checks = Vec::new();
    for p in cfg.grid.cells() {
        for n in (0..=4).filter(|&n| p.moment_exists(n)) {
            let id = format!("moments/{}/n={n}", cell_id(&p));
            checks.push(Check::new(id.clone(), move || {
                let mut ins = cell_inputs(&p);
                ins.push(("n", n.to_string()));
                let closed = moment(&p, n).value.expect("existence filtered");
                let quad = moment_quadrature(&p, n, &ToleranceConfig::default()).map(|q| q.value);
                real_or_failed(id.clone(), inputs(ins), closed, quad, tol)
            }));
        }
    }
    checks
}

fn variance_suite(cfg: &RunConfig) -> Vec<Check> {
    let tol = cfg.tolerance("variance", VARIANCE_TOLERANCE);
    let mut checks: Vec<Check> = cfg
        .grid
        .cells()
        .into_iter()
        .filter(|p| p.moment_exists(2))
        .map(|p| {
            let id = format!("variance/algebraic/{}", cell_id(&p));
            Check::new(id.clone(), move || {
                let m1 = moment(&p, 1).value.expect("exists");
                let m2 = moment(&p, 2).value.expect("exists");
                real_or_failed(
                    id.clone(),
                    inputs(cell_inputs(&p)),
                    m2 - m1 * m1,
                    variance(&p),
                    tol,
                )
            })
        })
        .collect();

    let multiplier = cfg.tolerance("variance-mc", SE_MULTIPLIER);
    let (seed, n) = (cfg.seed, cfg.mc_samples);
    let p = DistParams::new(2.0, 1.0, 0.1).expect("valid parameters");
    let id = format!("variance/monte-carlo/{}", cell_id(&p));
    checks.push(Check::new(id.clone(), move || {
        let xs = sample(&p, &mut stream_rng(seed, 0), n);
        let expected = variance(&p).expect("exists");
        let (est, se) = variance_with_se(&xs);
        mc_report(id.clone(), &p, seed, n, multiplier, expected, est, se)
    }));
    checks
}

/// Unbiased sample variance and its standard error `sqrt((m₄ - s⁴)/n)`.
fn variance_with_se(xs: &[f64]) -> (f64, f64) {
    let (m, v) = mean_and_variance(xs);
    let m4 = xs.iter().map(|&x| (x - m).powi(4)).sum::<f64>() / xs.len() as f64;
    (v, ((m4 - v * v).max(0.0) / xs.len() as f64).sqrt())
}

#[allow(clippy::too_many_arguments)]
fn mc_report(
    id: String,
    p: &DistParams,
    seed: u64,
    n: usize,
    multiplier: f64,
    expected: f64,
    estimate: f64,
    se: f64,
) -> VerificationReport {
    let mut ins = cell_inputs(p);
    ins.extend([
        ("seed", seed.to_string()),
        ("samples", n.to_string()),
        ("standard_error", se.to_string()),
        ("se_multiplier", multiplier.to_string()),
    ]);
    VerificationReport::real(
        id,
        inputs(ins),
        expected,
        estimate,
        multiplier * se / expected.abs(),
    )
}

fn eq19_suite(cfg: &RunConfig) -> Vec<Check> {
    let tol = cfg.tolerance("eq19", EQ19_TOLERANCE);
    let mut checks = Vec::new();
    for lambda in [0.05, 0.1, 0.2] {
        let mut n = 0;
        while (n as f64 + 1.0) * lambda < 1.0 - 1e-12 {
            let id = format!("eq19/l={lambda}/n={n:02}");
            checks.push(Check::new(id.clone(), move || {
                let ins = inputs([("lambda", lambda.to_string()), ("n", n.to_string())]);
                let p = DistParams::new(1.0, 1.0, lambda).expect("valid parameters");
                let factorial: f64 = (1..=n).map(|k| k as f64).product();
                let via_moment = moment(&p, n)
                    .value
                    .map(|m| falling_factorial_degen(1.0, n, lambda) * m / factorial);
                match via_moment {
                    Some(expected) => real_or_failed(
                        id.clone(),
                        ins,
                        expected,
                        degen_mgf_coefficient(n, lambda),
                        tol,
                    ),
                    None => VerificationReport::failed(
                        id.clone(),
                        ins,
                        ReportValue::Text("moment".into()),
                        &Error::Nonexistence(format!("moment of order {n}")),
                        tol,
                    ),
                }
            }));
            n += 1;
        }
    }
    checks
}

fn eq20_suite(cfg: &RunConfig) -> Vec<Check> {
    const N_MAX: usize = 5;
    let tol = cfg.tolerance("eq20", EQ20_TOLERANCE);
    let mut checks = Vec::new();
    for alpha in [0.5, 1.0, 2.0] {
        for lambda in [0.05, 0.1] {
            let p = DistParams::new(alpha, 1.0, lambda).expect("valid parameters");
            let quad_cfg = ToleranceConfig::default()
                .with_rel_tol(1e-11)
                .expect("valid tolerance");
            for n in 0..=N_MAX {
                let id = format!("eq20/a={alpha}/l={lambda}/n={n}");
                checks.push(Check::new(id.clone(), move || {
                    let mut ins = cell_inputs(&p);
                    ins.push(("n", n.to_string()));
                    match factorial_moment_expansion(&p, n, &quad_cfg) {
                        Ok(rows) => {
                            let row = rows[n];
                            VerificationReport::real(
                                id.clone(),
                                inputs(ins),
                                row.stirling_path,
                                row.quadrature_path,
                                tol,
                            )
                        }
                        Err(e) => VerificationReport::failed(
                            id.clone(),
                            inputs(ins),
                            ReportValue::Text("stirling path".into()),
                            &e,
                            tol,
                        ),
                    }
                }));
            }
        }
    }
    checks
}

fn inversion_suite() -> Vec<Check> {
    let mut checks: Vec<Check> = ["1/10", "1/3", "3/7", "9/10"]
        .into_iter()
        .map(|lambda_text| {
            let id = format!("inversion/l={lambda_text}");
            Check::new(id.clone(), move || {
                let lambda = parse_rational(lambda_text).expect("literal rational");
                let ins = inputs([
                    ("lambda", lambda_text.to_string()),
                    ("max_n", INVERSION_MAX_N.to_string()),
                ]);
                let first =
                    stirling_triangle(StirlingKind::DegenerateFirst, &lambda, INVERSION_MAX_N);
                let second =
                    stirling_triangle(StirlingKind::DegenerateSecond, &lambda, INVERSION_MAX_N);
                match inversion_defect(&first, &second) {
                    Ok(defect) => VerificationReport::rational(
                        id.clone(),
                        ins,
                        &RationalScalar::zero(),
                        &defect,
                    ),
                    Err(e) => VerificationReport::failed(
                        id.clone(),
                        ins,
                        (&RationalScalar::zero()).into(),
                        &e,
                        0.0,
                    ),
                }
            })
        })
        .collect();

    for (kind, reference) in [
        (
            StirlingKind::DegenerateFirst,
            classical_first as fn(usize) -> Vec<Vec<i128>>,
        ),
        (StirlingKind::DegenerateSecond, classical_second),
    ] {
        let id = format!("inversion/classical-reduction/{kind}");
        checks.push(Check::new(id.clone(), move || {
            let n_max = CLASSICAL_REDUCTION_MAX_N;
            let triangle = stirling_triangle(kind, &RationalScalar::zero(), n_max);
            let table = reference(n_max);
            let mut defect = RationalScalar::zero();
            for (n, row) in table.iter().enumerate() {
                for (l, &value) in row.iter().enumerate().take(n + 1) {
                    let diff = (triangle.row(n)[l].clone()
                        - RationalScalar::from_integer(value.into()))
                    .abs();
                    if diff > defect {
                        defect = diff;
                    }
                }
            }
            let ins = inputs([("lambda", "0".to_string()), ("max_n", n_max.to_string())]);
            VerificationReport::rational(id.clone(), ins, &RationalScalar::zero(), &defect)
        }));
    }
    checks
}

/// Signed Stirling numbers of the first kind by `s(n+1,k) = s(n,k-1) - n s(n,k)`.
fn classical_first(n_max: usize) -> Vec<Vec<i128>> {
    let mut t = vec![vec![0i128; n_max + 1]; n_max + 1];
    t[0][0] = 1;
    for n in 0..n_max {
        for k in 1..=n + 1 {
            t[n + 1][k] = t[n][k - 1] - n as i128 * t[n][k];
        }
    }
    t
}

/// Stirling numbers of the second kind by `S(n+1,k) = k S(n,k) + S(n,k-1)`.
fn classical_second(n_max: usize) -> Vec<Vec<i128>> {
    let mut t = vec![vec![0i128; n_max + 1]; n_max + 1];
    t[0][0] = 1;
    for n in 0..n_max {
        for k in 1..=n + 1 {
            t[n + 1][k] = k as i128 * t[n][k] + t[n][k - 1];
        }
    }
    t
}

fn closing_identity_suite(cfg: &RunConfig) -> Vec<Check> {
    let mut checks = Vec::new();
    for k in 0..=CLOSING_MAX_K {
        for alpha_text in ["1/2", "1", "2", "7/3"] {
            for lambda_text in ["1/10", "1/5", "1/3"] {
                let alpha = parse_rational(alpha_text).expect("literal rational");
                let lambda = parse_rational(lambda_text).expect("literal rational");
                // cells whose moment denominators vanish are outside the identity's domain
                let lhs = match identity_lhs(k, &alpha, &lambda) {
                    Ok(lhs) => lhs,
                    Err(Error::SingularDenominator { .. }) => continue,
                    Err(e) => panic!("unexpected error building the closing identity grid: {e}"),
                };
                let id = format!("closing-identity/k={k}/a={alpha_text}/l={lambda_text}");
                checks.push(Check::new(id.clone(), move || {
                    let ins = inputs([
                        ("k", k.to_string()),
                        ("alpha", alpha_text.to_string()),
                        ("lambda", lambda_text.to_string()),
                    ]);
                    match identity_rhs(k, &alpha, &lambda) {
                        Ok(rhs) => VerificationReport::rational(id.clone(), ins, &lhs, &rhs),
                        Err(e) => {
                            VerificationReport::failed(id.clone(), ins, (&lhs).into(), &e, 0.0)
                        }
                    }
                }));
            }
        }
    }

    let tol = cfg.tolerance("closing-identity-series", LOG_SERIES_TOLERANCE);
    for lambda_text in ["1/10", "1/5", "1/3"] {
        for n in 0..=CLOSING_MAX_K {
            for t in [-0.1, -0.05, 0.05, 0.1] {
                let id = format!("closing-identity/log-series/l={lambda_text}/n={n}/t={t}");
                checks.push(Check::new(id.clone(), move || {
                    let exact = parse_rational(lambda_text).expect("literal rational");
                    let lambda = rational_to_f64(&exact);
                    let first = stirling_triangle(StirlingKind::DegenerateFirst, &exact, 30);
                    let ins = inputs([
                        ("lambda", lambda_text.to_string()),
                        ("n", n.to_string()),
                        ("t", t.to_string()),
                    ]);
                    let factorial: f64 = (1..=n).map(|k| k as f64).product();
                    let direct = match log_degen(1.0 + t, lambda) {
                        Ok(v) => v.powi(n as i32) / factorial,
                        Err(e) => {
                            return VerificationReport::failed(
                                id.clone(),
                                ins,
                                ReportValue::Text("log".into()),
                                &e,
                                tol,
                            )
                        }
                    };
                    real_or_failed(
                        id.clone(),
                        ins,
                        direct,
                        log_degen_power_truncated(&first, n, t),
                        tol,
                    )
                }));
            }
        }
    }
    checks
}

fn classical_limit_suite(cfg: &RunConfig) -> Vec<Check> {
    let tol = cfg.tolerance("classical-limit", CLASSICAL_LIMIT_TOLERANCE);
    let lambda = CLASSICAL_LIMIT_LAMBDA;
    let mut checks = Vec::new();
    for &alpha in &cfg.grid.alphas {
        let id = format!("classical-limit/gamma/s={alpha}");
        checks.push(Check::new(id.clone(), move || {
            let ins = inputs([("s", alpha), ("lambda", lambda)]);
            match gamma_classical(alpha) {
                Ok(expected) => real_or_failed(
                    id.clone(),
                    ins,
                    expected,
                    gamma_degen(alpha, lambda).map(|v| v.value),
                    tol,
                ),
                Err(e) => VerificationReport::failed(
                    id.clone(),
                    ins,
                    ReportValue::Text("gamma".into()),
                    &e,
                    tol,
                ),
            }
        }));
        for &beta in &cfg.grid.betas {
            let Ok(p) = DistParams::new(alpha, beta, lambda) else {
                continue;
            };
            let ga = gamma_classical(alpha);
            for n in 0..=4 {
                let id = format!("classical-limit/moment/{}/n={n}", cell_id(&p));
                let ga = ga.clone();
                checks.push(Check::new(id.clone(), move || {
                    let mut ins = cell_inputs(&p);
                    ins.push(("n", n.to_string()));
                    let expected = ga.clone().and_then(|ga| {
                        Ok(beta.powi(-(n as i32)) * gamma_classical(n as f64 + alpha)? / ga)
                    });
                    match expected {
                        Ok(expected) => real_or_failed(
                            id.clone(),
                            inputs(ins),
                            expected,
                            moment(&p, n)
                                .value
                                .ok_or_else(|| Error::Nonexistence(format!("order {n}"))),
                            tol,
                        ),
                        Err(e) => VerificationReport::failed(
                            id.clone(),
                            inputs(ins),
                            ReportValue::Text("gamma".into()),
                            &e,
                            tol,
                        ),
                    }
                }));
            }
            for y in [0.1, 1.0, 5.0, 15.0] {
                let x = y / beta;
                let id = format!("classical-limit/pdf/{}/x={x}", cell_id(&p));
                let ga = ga.clone();
                checks.push(Check::new(id.clone(), move || {
                    let mut ins = cell_inputs(&p);
                    ins.push(("x", x.to_string()));
                    match ga.clone() {
                        Ok(ga) => {
                            let expected = beta * (-y).exp() * y.powf(alpha - 1.0) / ga;
                            VerificationReport::real(
                                id.clone(),
                                inputs(ins),
                                expected,
                                pdf(&p, x),
                                tol,
                            )
                        }
                        Err(e) => VerificationReport::failed(
                            id.clone(),
                            inputs(ins),
                            ReportValue::Text("gamma".into()),
                            &e,
                            tol,
                        ),
                    }
                }));
            }
        }
    }
    checks
}

fn sampler_suite(cfg: &RunConfig) -> Vec<Check> {
    let coefficient = cfg.tolerance("sampler-ks", KS_COEFFICIENT);
    let multiplier = cfg.tolerance("sampler-moments", SE_MULTIPLIER);
    let (seed, n) = (cfg.seed, cfg.mc_samples);
    let mut checks = Vec::new();
    for (index, p) in cfg.grid.cells().into_iter().enumerate() {
        let stream = index as u64;
        let id = format!("sampler-ks/ks/{}", cell_id(&p));
        checks.push(Check::new(id.clone(), move || {
            let xs = sample(&p, &mut stream_rng(seed, stream), n);
            let mut ins = cell_inputs(&p);
            ins.extend([("seed", seed.to_string()), ("samples", n.to_string())]);
            let critical = coefficient / (n as f64).sqrt();
            match summarize(&p, &xs) {
                Ok(s) => {
                    VerificationReport::real(id.clone(), inputs(ins), 0.0, s.ks_statistic, critical)
                }
                Err(e) => {
                    VerificationReport::failed(id.clone(), inputs(ins), 0.0.into(), &e, critical)
                }
            }
        }));
        // the standard error of the mean needs E[X²], that of the variance E[X⁴]
        if p.moment_exists(2) {
            let id = format!("sampler-ks/mean/{}", cell_id(&p));
            checks.push(Check::new(id.clone(), move || {
                let xs = sample(&p, &mut stream_rng(seed, stream), n);
                let (m, v) = mean_and_variance(&xs);
                let expected = moment(&p, 1).value.expect("exists");
                mc_report(
                    id.clone(),
                    &p,
                    seed,
                    n,
                    multiplier,
                    expected,
                    m,
                    (v / n as f64).sqrt(),
                )
            }));
        }
        if p.moment_exists(4) {
            let id = format!("sampler-ks/variance/{}", cell_id(&p));
            checks.push(Check::new(id.clone(), move || {
                let xs = sample(&p, &mut stream_rng(seed, stream), n);
                let (est, se) = variance_with_se(&xs);
                mc_report(
                    id.clone(),
                    &p,
                    seed,
                    n,
                    multiplier,
                    variance(&p).expect("exists"),
                    est,
                    se,
                )
            }));
        }
    }
    checks
}

/// `(α₁, α₂, β, λ)` pairs for the independent-sum checks.
pub const SUM_MOMENT_PAIRS: [(f64, f64, f64, f64); 2] =
    [(1.0, 2.0, 1.0, 0.05), (0.5, 1.5, 2.0, 0.05)];

fn sum_moments_suite(cfg: &RunConfig) -> Vec<Check> {
    let multiplier = cfg.tolerance("sum-moments", SE_MULTIPLIER);
    let (seed, samples) = (cfg.seed, cfg.mc_samples);
    let mut checks = Vec::new();
    for (index, &(a1, a2, beta, lambda)) in SUM_MOMENT_PAIRS.iter().enumerate() {
        let first = DistParams::new(a1, beta, lambda).expect("valid parameters");
        let second = DistParams::new(a2, beta, lambda).expect("valid parameters");
        for n in 1..=3 {
            let id = format!("sum-moments/a1={a1}/a2={a2}/b={beta}/l={lambda}/n={n}");
            checks.push(Check::new(id.clone(), move || {
                let ins = inputs([
                    ("alpha1", a1.to_string()),
                    ("alpha2", a2.to_string()),
                    ("beta", beta.to_string()),
                    ("lambda", lambda.to_string()),
                    ("n", n.to_string()),
                    ("seed", seed.to_string()),
                    ("samples", samples.to_string()),
                    ("se_multiplier", multiplier.to_string()),
                ]);
                let expected = match sum_moment(&[first, second], n) {
                    Ok(v) => v,
                    Err(e) => {
                        return VerificationReport::failed(
                            id.clone(),
                            ins,
                            ReportValue::Text("sum moment".into()),
                            &e,
                            0.0,
                        )
                    }
                };
                let (s1, s2) = (Sampler::new(&first), Sampler::new(&second));
                let mut rng = stream_rng(seed, index as u64);
                let powers: Vec<f64> = (0..samples)
                    .map(|_| (s1.draw(&mut rng) + s2.draw(&mut rng)).powi(n as i32))
                    .collect();
                let (m, v) = mean_and_variance(&powers);
                let se = (v / samples as f64).sqrt();
                let mut report = VerificationReport::real(
                    id.clone(),
                    ins,
                    expected,
                    m,
                    multiplier * se / expected.abs(),
                );
                report
                    .inputs
                    .insert("standard_error".into(), se.to_string());
                report
            }));
        }
    }
    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fast_config() -> RunConfig {
        RunConfig {
            mc_samples: 20_000,
            ..RunConfig::default()
        }
    }

    #[test]
    fn unknown_suite_is_an_error() {
        assert!(matches!(
            run_suite("nope", &fast_config()),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn classical_tables_match_known_values() {
        let s1 = classical_first(6);
        assert_eq!(s1[5][2], -50);
        assert_eq!(s1[6][3], -225);
        let s2 = classical_second(6);
        assert_eq!(s2[5][2], 15);
        assert_eq!(s2[6][3], 90);
    }

    #[test]
    fn exact_and_cheap_suites_pass() {
        let cfg = fast_config();
        for name in ["eq19", "inversion", "classical-limit"] {
            let reports = run_suite(name, &cfg).unwrap();
            assert!(!reports.is_empty());
            for r in &reports {
                assert!(r.passed, "{r:?}");
                assert!(r.passed == (r.rel_error <= r.tolerance) || r.tolerance == 0.0);
            }
        }
    }

    #[test]
    fn reports_are_sorted_and_reproducible() {
        let cfg = fast_config();
        let strip = |rs: Vec<VerificationReport>| {
            rs.into_iter()
                .map(|r| r.with_runtime_ms(0.0))
                .collect::<Vec<_>>()
        };
        let a = strip(run_suite("sum-moments", &cfg).unwrap());
        let b = strip(run_suite("sum-moments", &cfg).unwrap());
        assert_eq!(a, b);
        assert!(a.windows(2).all(|w| w[0].check_id < w[1].check_id));
        assert!(a.iter().all(|r| r.inputs["seed"] == "42"));
        let other = RunConfig {
            seed: 43,
            ..fast_config()
        };
        assert_ne!(a, strip(run_suite("sum-moments", &other).unwrap()));
    }

    #[test]
    fn tolerance_override_produces_failures() {
        let mut cfg = fast_config();
        cfg.grid.lambdas = vec![0.25];
        cfg.grid.betas = vec![1.0];
        cfg.set_tolerance("moments", "1e-30").unwrap();
        let reports = run_suite("moments", &cfg).unwrap();
        assert!(reports.iter().any(|r| !r.passed));
        assert!(reports.iter().all(|r| r.tolerance == 1e-30));
    }

    #[test]
    fn closing_identity_skips_singular_cells() {
        let ids: Vec<String> = closing_identity_suite(&fast_config())
            .into_iter()
            .map(|c| c.id)
            .collect();
        // 1 - 3λ = 0 at α = 2, λ = 1/3
        assert!(ids.contains(&"closing-identity/k=0/a=2/l=1/3".to_string()));
        assert!(!ids.contains(&"closing-identity/k=1/a=2/l=1/3".to_string()));
        assert!(ids.contains(&"closing-identity/k=8/a=7/3/l=1/3".to_string()));
    }
}
