use super::gamma::ln_beta;
use crate::error::{domain, Error, Result};

const CF_EPS: f64 = 1e-16;
const CF_TINY: f64 = 1e-300;

/// Regularized incomplete beta `I_z(a, b)`.
///
/// Continued fraction by the modified Lentz method, evaluated directly for
/// `z < (a + 1) / (a + b + 2)` and through `I_z(a,b) = 1 - I_{1-z}(b,a)`
/// otherwise.
pub fn reg_incomplete_beta(z: f64, a: f64, b: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&z) {
        return Err(domain(format!(
            "incomplete beta requires 0 <= z <= 1, got {z}"
        )));
    }
    if !(a > 0.0 && b > 0.0) {
        return Err(domain(format!(
            "incomplete beta requires a > 0 and b > 0, got a={a}, b={b}"
        )));
    }
    if z == 0.0 {
        return Ok(0.0);
    }
    if z == 1.0 {
        return Ok(1.0);
    }
    let ln_front = a * z.ln() + b * (-z).ln_1p() - ln_beta(a, b)?;
    let value = if z < (a + 1.0) / (a + b + 2.0) {
        ln_front.exp() * continued_fraction(z, a, b)? / a
    } else {
        1.0 - ln_front.exp() * continued_fraction(1.0 - z, b, a)? / b
    };
    Ok(value.clamp(0.0, 1.0))
}

fn continued_fraction(z: f64, a: f64, b: f64) -> Result<f64> {
    // Iteration count grows like sqrt(max(a, b)).
    let max_iter = 200 + (10.0 * a.max(b).sqrt()) as usize;
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let guard = |x: f64| if x.abs() < CF_TINY { CF_TINY } else { x };

    let mut c = 1.0;
    let mut d = 1.0 / guard(1.0 - qab * z / qap);
    let mut h = d;
    for m in 1..=max_iter {
        let m = m as f64;
        let m2 = 2.0 * m;
        let even = m * (b - m) * z / ((qam + m2) * (a + m2));
        d = 1.0 / guard(1.0 + even * d);
        c = guard(1.0 + even / c);
        h *= d * c;
        let odd = -(a + m) * (qab + m) * z / ((a + m2) * (qap + m2));
        d = 1.0 / guard(1.0 + odd * d);
        c = guard(1.0 + odd / c);
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < CF_EPS {
            return Ok(h);
        }
    }
    Err(Error::IterationLimit {
        what: "incomplete beta continued fraction",
        iterations: max_iter,
    })
}
