use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::Serialize;

use crate::error::{domain, Error, Result};

/// Outcome of one adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
}

/// Stopping rule for the adaptive integrator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig {
    pub rel_tol: f64,
    /// Absolute floor; the default only guards against underflow.
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-12,
            abs_tol: 1e-300,
            max_subdivisions: 2000,
        }
    }
}

impl ToleranceConfig {
    pub fn new(rel_tol: f64, abs_tol: f64, max_subdivisions: usize) -> Result<Self> {
        if !(rel_tol > 0.0 && abs_tol > 0.0) || max_subdivisions == 0 {
            return Err(domain(format!(
                "tolerances must be positive and max_subdivisions >= 1 \
                 (rel_tol={rel_tol}, abs_tol={abs_tol}, max_subdivisions={max_subdivisions})"
            )));
        }
        Ok(Self {
            rel_tol,
            abs_tol,
            max_subdivisions,
        })
    }

    pub fn with_rel_tol(self, rel_tol: f64) -> Result<Self> {
        Self::new(rel_tol, self.abs_tol, self.max_subdivisions)
    }
}

/// Asymptotic shape of a semi-infinite integrand.
///
/// `tail_exponent = p` means `f(t) ~ t^-p` as `t -> inf`; `origin_exponent = e`
/// means `f(t) ~ t^e` as `t -> 0+`. Either may be left unknown.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SemiInfiniteHints {
    pub tail_exponent: Option<f64>,
    pub origin_exponent: Option<f64>,
}

// Gauss-Kronrod 15/7 nodes and weights (QUADPACK qk15).
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
    piece: usize,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod_15(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64) -> (f64, f64) {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let f_center = f(center);
    let mut res_gauss = f_center * WG[3];
    let mut res_kronrod = f_center * WGK[7];
    let mut res_abs = res_kronrod.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        if j % 2 == 1 {
            res_gauss += WG[j / 2] * (f1 + f2);
        }
        res_kronrod += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
    }
    let mean = 0.5 * res_kronrod;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let scale = half.abs();
    let result = res_kronrod * half;
    let res_abs = res_abs * scale;
    let res_asc = res_asc * scale;

    let mut err = ((res_kronrod - res_gauss) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    (result, err)
}

/// Globally adaptive GK15 over a set of (piece, lo, hi) starting segments.
fn adaptive(
    pieces: &[&dyn Fn(f64) -> f64],
    initial: &[(usize, f64, f64)],
    cfg: &ToleranceConfig,
) -> Result<QuadratureResult> {
    let mut evaluations = 0;
    let mut eval = |piece: usize, lo: f64, hi: f64| -> Result<Segment> {
        evaluations += 15;
        let (value, error) = gauss_kronrod_15(pieces[piece], lo, hi);
        if !value.is_finite() || !error.is_finite() {
            return Err(domain(format!(
                "integrand is not finite on [{lo}, {hi}] (piece {piece})"
            )));
        }
        Ok(Segment {
            lo,
            hi,
            value,
            error,
            piece,
        })
    };

    let mut heap = BinaryHeap::new();
    for &(piece, lo, hi) in initial {
        heap.push(eval(piece, lo, hi)?);
    }
    let totals = |heap: &BinaryHeap<Segment>| {
        heap.iter()
            .fold((0.0, 0.0), |(v, e), s| (v + s.value, e + s.error))
    };

    loop {
        let (value, error) = totals(&heap);
        let tolerance = cfg.abs_tol.max(cfg.rel_tol * value.abs());
        let converged = error <= tolerance;
        let exhausted = heap.len() >= cfg.max_subdivisions;
        let worst = heap.peek().map(|s| (s.lo, s.hi));
        let splittable = worst.is_some_and(|(lo, hi)| {
            let mid = 0.5 * (lo + hi);
            lo < mid && mid < hi
        });
        if converged || exhausted || !splittable {
            let result = QuadratureResult {
                value,
                abs_error_estimate: error,
                evaluations,
                converged,
            };
            return if converged {
                Ok(result)
            } else {
                Err(Error::NonConvergence(result))
            };
        }
        let seg = heap.pop().expect("heap is non-empty");
        let mid = 0.5 * (seg.lo + seg.hi);
        heap.push(eval(seg.piece, seg.lo, mid)?);
        heap.push(eval(seg.piece, mid, seg.hi)?);
    }
}

/// Adaptive GK15 on a finite interval `[a, b]`.
pub fn integrate<F>(f: F, a: f64, b: f64, cfg: &ToleranceConfig) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    if !(a.is_finite() && b.is_finite()) {
        return Err(domain("finite-interval quadrature needs finite limits"));
    }
    if a == b {
        return Ok(QuadratureResult {
            value: 0.0,
            abs_error_estimate: 0.0,
            evaluations: 0,
            converged: true,
        });
    }
    let pieces: [&dyn Fn(f64) -> f64; 1] = [&f];
    adaptive(&pieces, &[(0, a, b)], cfg)
}

/// `∫₀^∞ f(t) dt` for integrands with algebraic decay `t^-p`.
///
/// `tail_exponent_hint = Some(p)` selects a power substitution that keeps the
/// mapped tail bounded; `None` assumes faster-than-`t^-2` decay.
pub fn integrate_semi_infinite<F>(
    f: F,
    tail_exponent_hint: Option<f64>,
    cfg: &ToleranceConfig,
) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    integrate_semi_infinite_with(
        f,
        SemiInfiniteHints {
            tail_exponent: tail_exponent_hint,
            origin_exponent: None,
        },
        cfg,
    )
}

/// [`integrate_semi_infinite`] with an additional hint for an integrable
/// singularity at the origin.
///
/// `(0, 1]` is integrated in `w` with `t = w^q`, `q = 1/(1+e)` when the origin
/// exponent `e` lies in `(-1, 0)`. `[1, ∞)` is integrated in `v ∈ (0, 1]` with
/// `t = v^-k`, where `k = 1/(p-1)` for `p < 2` and `k = 1` otherwise; both
/// choices make the mapped integrand bounded at `v = 0`.
pub fn integrate_semi_infinite_with<F>(
    f: F,
    hints: SemiInfiniteHints,
    cfg: &ToleranceConfig,
) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    let tail_power = match hints.tail_exponent {
        Some(p) if p.is_nan() || p <= 1.0 => return Err(Error::Divergent(p)),
        Some(p) if p < 2.0 => 1.0 / (p - 1.0),
        _ => 1.0,
    };
    let head_power = match hints.origin_exponent {
        Some(e) if e.is_nan() || e <= -1.0 => {
            return Err(domain(format!(
                "integrand ~ t^{e} at the origin is not integrable"
            )))
        }
        Some(e) if e < 0.0 => 1.0 / (1.0 + e),
        _ => 1.0,
    };

    let head = |w: f64| {
        if head_power == 1.0 {
            f(w)
        } else {
            let t = w.powf(head_power);
            head_power * (t / w) * f(t)
        }
    };
    let tail = |v: f64| {
        let t = v.powf(-tail_power);
        if !t.is_finite() {
            return 0.0;
        }
        // k v^(-k-1) f(t) = k (t f(t)) / v
        tail_power * (t * f(t)) / v
    };
    let pieces: [&dyn Fn(f64) -> f64; 2] = [&head, &tail];
    adaptive(&pieces, &[(0, 0.0, 1.0), (1, 0.0, 1.0)], cfg)
}
