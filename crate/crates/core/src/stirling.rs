//! Exact Stirling numbers, classical and degenerate, by change of basis.
//!
//! * `(x)_n = Σ_l S_{1,λ}(n,l) (x)_{l,λ}`: degenerate first kind
//! * `(x)_{n,λ} = Σ_l S_{2,λ}(n,l) (x)_l`: degenerate second kind
//! * `(x)_n = Σ_l S_1(n,l) x^l`: classical (signed) first kind
//!
//! Each triangle is obtained by expanding both polynomial bases in monomials
//! and solving the unit lower-triangular system exactly over ℚ.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
pub type RationalScalar = BigRational;

/// Parses `"p/q"`, integers and decimals with optional exponent
/// (`"0.1"`, `"-2.5e-3"`) into an exact rational.
pub fn parse_rational(text: &str) -> Result<RationalScalar> {
    let text = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    if let Some((num, den)) = text.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(BigRational::new(num, den));
    }

    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(i) => (&text[..i], text[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (text, 0),
    };
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let all_digits = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
    if int_part.len() + frac_part.len() == 0 || !all_digits(int_part) || !all_digits(frac_part) {
        return Err(bad());
    }
    let digits: BigInt = format!("{int_part}{frac_part}")
        .parse()
        .map_err(|_| bad())?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut value = if scale >= 0 {
        BigRational::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(digits, num_traits::pow(ten, scale.unsigned_abs() as usize))
    };
    if negative {
        value = -value;
    }
    Ok(value)
}

/// `"num/den"`, including `"n/1"` for integers.
pub fn format_rational(value: &RationalScalar) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

pub fn rational_to_f64(value: &RationalScalar) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// The exact rational equal to the binary value of `x`.
pub fn rational_from_f64(x: f64) -> Result<RationalScalar> {
    BigRational::from_float(x).ok_or_else(|| Error::Parse(format!("{x} is not finite")))
}

fn rat(n: i64) -> RationalScalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Monomial coefficients `[c_0, …, c_n]` of `(x)_{n,λ}`.
pub fn poly_coeffs_falling_degen(n: usize, lambda: &RationalScalar) -> Vec<RationalScalar> {
    let mut coeffs = vec![RationalScalar::one()];
    for j in 0..n {
        // multiply by (x - jλ)
        let shift = lambda * rat(j as i64);
        let mut next = vec![RationalScalar::zero(); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * &shift;
        }
        coeffs = next;
    }
    coeffs
}

/// Which basis change a [`StirlingTriangle`] encodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StirlingKind {
    /// `(x)_n → x^l`
    ClassicalFirst,
    /// `(x)_n → (x)_{l,λ}`
    DegenerateFirst,
    /// `(x)_{n,λ} → (x)_l`
    DegenerateSecond,
}

impl fmt::Display for StirlingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StirlingKind::ClassicalFirst => "classical-first",
            StirlingKind::DegenerateFirst => "degenerate-first",
            StirlingKind::DegenerateSecond => "degenerate-second",
        })
    }
}

impl FromStr for StirlingKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.replace('_', "-").as_str() {
            "classical-first" => Ok(StirlingKind::ClassicalFirst),
            "degenerate-first" => Ok(StirlingKind::DegenerateFirst),
            "degenerate-second" => Ok(StirlingKind::DegenerateSecond),
            other => Err(Error::Parse(format!(
                "unknown Stirling kind {other:?} (expected classical-first, \
                 degenerate-first or degenerate-second)"
            ))),
        }
    }
}

/// Lower-triangular table of exact basis-change coefficients `T(n, l)`,
/// `0 <= l <= n <= max_n`. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct StirlingTriangle {
    kind: StirlingKind,
    lambda: RationalScalar,
    rows: Vec<Vec<RationalScalar>>,
}

impl StirlingTriangle {
    pub fn kind(&self) -> StirlingKind {
        self.kind
    }

    /// λ the triangle was built for; zero for the classical kind.
    pub fn lambda(&self) -> &RationalScalar {
        &self.lambda
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// `T(n, l)`, or `None` outside `0 <= l <= n <= max_n`.
    pub fn get(&self, n: usize, l: usize) -> Option<&RationalScalar> {
        self.rows.get(n).and_then(|row| row.get(l))
    }

    pub fn row(&self, n: usize) -> &[RationalScalar] {
        &self.rows[n]
    }

    /// All `(n, l, T(n, l))` in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &RationalScalar)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(n, row)| row.iter().enumerate().map(move |(l, v)| (n, l, v)))
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        self.rows
            .iter()
            .map(|row| row.iter().map(rational_to_f64).collect())
            .collect()
    }
}

/// Builds the triangle of `kind` for `0 <= n <= max_n`.
///
/// `lambda` is ignored for [`StirlingKind::ClassicalFirst`].
pub fn stirling_triangle(
    kind: StirlingKind,
    lambda: &RationalScalar,
    max_n: usize,
) -> StirlingTriangle {
    let one = RationalScalar::one();
    let falling = |l: &RationalScalar| -> Vec<Vec<RationalScalar>> {
        (0..=max_n)
            .map(|n| poly_coeffs_falling_degen(n, l))
            .collect()
    };
    let (lambda, rows) = match kind {
        StirlingKind::ClassicalFirst => (RationalScalar::zero(), falling(&one)),
        StirlingKind::DegenerateFirst => (
            lambda.clone(),
            change_basis(&falling(&one), &falling(lambda)),
        ),
        StirlingKind::DegenerateSecond => (
            lambda.clone(),
            change_basis(&falling(lambda), &falling(&one)),
        ),
    };
    StirlingTriangle { kind, lambda, rows }
}

/// Solves `source = T · target` row by row; both bases are monic with
/// `deg(basis_n) = n`, so `target` is unit lower-triangular.
fn change_basis(
    source: &[Vec<RationalScalar>],
    target: &[Vec<RationalScalar>],
) -> Vec<Vec<RationalScalar>> {
    source
        .iter()
        .enumerate()
        .map(|(n, src)| {
            let mut row = vec![RationalScalar::zero(); n + 1];
            for j in (0..=n).rev() {
                let mut acc = src[j].clone();
                for l in j + 1..=n {
                    acc -= &row[l] * &target[l][j];
                }
                row[j] = acc;
            }
            row
        })
        .collect()
}

/// Largest `|(S₁,λ · S₂,λ)(n,m) - δ(n,m)|` over the triangle.
pub fn inversion_defect(
    first: &StirlingTriangle,
    second: &StirlingTriangle,
) -> Result<RationalScalar> {
    if first.kind != StirlingKind::DegenerateFirst || second.kind != StirlingKind::DegenerateSecond
    {
        return Err(Error::ParameterMismatch(format!(
            "inversion pairs degenerate-first with degenerate-second, got {} and {}",
            first.kind, second.kind
        )));
    }
    if first.lambda != second.lambda {
        return Err(Error::ParameterMismatch(format!(
            "lambda differs: {} vs {}",
            format_rational(&first.lambda),
            format_rational(&second.lambda)
        )));
    }
    if first.max_n() != second.max_n() {
        return Err(Error::DimensionMismatch {
            left: first.max_n(),
            right: second.max_n(),
        });
    }
    let mut worst = RationalScalar::zero();
    for n in 0..=first.max_n() {
        for m in 0..=n {
            let mut acc = RationalScalar::zero();
            for l in m..=n {
                acc += &first.rows[n][l] * &second.rows[l][m];
            }
            if n == m {
                acc -= RationalScalar::one();
            }
            let defect = acc.abs();
            if defect > worst {
                worst = defect;
            }
        }
    }
    Ok(worst)
}

/// True iff `S₁,λ · S₂,λ` is exactly the identity.
pub fn check_inversion(first: &StirlingTriangle, second: &StirlingTriangle) -> Result<bool> {
    Ok(inversion_defect(first, second)?.is_zero())
}

/// `(m+α-1 choose m) / ((1-(α+1)λ) choose m)_λ`, i.e. `E[X^m]` for
/// `X ~ Γ_λ(α, 1)`, exactly.
pub fn moment_ratio(
    m: usize,
    alpha: &RationalScalar,
    lambda: &RationalScalar,
) -> Result<RationalScalar> {
    let one = RationalScalar::one();
    let base = &one - (alpha + &one) * lambda;
    let mut value = RationalScalar::one();
    for j in 0..m {
        let jr = rat(j as i64);
        let denominator = &base - lambda * &jr;
        if denominator.is_zero() {
            return Err(Error::SingularDenominator { j });
        }
        // the m! of both binomials cancels factor by factor
        value = value * (alpha + &jr) / denominator;
    }
    Ok(value)
}

fn check_denominators(k: usize, alpha: &RationalScalar, lambda: &RationalScalar) -> Result<()> {
    moment_ratio(k, alpha, lambda).map(|_| ())
}

/// `Σ_{n=0}^k S_1(k,n) (n+α-1 choose n) / ((1-(α+1)λ) choose n)_λ`.
pub fn identity_lhs(
    k: usize,
    alpha: &RationalScalar,
    lambda: &RationalScalar,
) -> Result<RationalScalar> {
    check_denominators(k, alpha, lambda)?;
    let s1 = stirling_triangle(StirlingKind::ClassicalFirst, lambda, k);
    let mut sum = RationalScalar::zero();
    for n in 0..=k {
        sum += &s1.rows[k][n] * moment_ratio(n, alpha, lambda)?;
    }
    Ok(sum)
}

/// `Σ_{n=0}^k Σ_{l=0}^n Σ_{m=0}^l S_{2,λ}(n,l) S_1(l,m) S_{1,λ}(k,n)
///  (m+α-1 choose m) / ((1-(α+1)λ) choose m)_λ`.
pub fn identity_rhs(
    k: usize,
    alpha: &RationalScalar,
    lambda: &RationalScalar,
) -> Result<RationalScalar> {
    check_denominators(k, alpha, lambda)?;
    let s2_lambda = stirling_triangle(StirlingKind::DegenerateSecond, lambda, k);
    let s1 = stirling_triangle(StirlingKind::ClassicalFirst, lambda, k);
    let s1_lambda = stirling_triangle(StirlingKind::DegenerateFirst, lambda, k);
    let moments = (0..=k)
        .map(|m| moment_ratio(m, alpha, lambda))
        .collect::<Result<Vec<_>>>()?;

    let mut sum = RationalScalar::zero();
    for n in 0..=k {
        let mut inner = RationalScalar::zero();
        for l in 0..=n {
            for (m, mu) in moments.iter().enumerate().take(l + 1) {
                inner += &s2_lambda.rows[n][l] * &s1.rows[l][m] * mu;
            }
        }
        sum += &s1_lambda.rows[k][n] * inner;
    }
    Ok(sum)
}

/// `Σ_{k=n}^{max_n} S_{1,λ}(k,n) t^k / k!` in floating point, the truncated
/// series of `(log_λ(1+t))^n / n!`.
pub fn log_degen_power_truncated(first: &StirlingTriangle, n: usize, t: f64) -> Result<f64> {
    if first.kind != StirlingKind::DegenerateFirst {
        return Err(Error::ParameterMismatch(format!(
            "expected a degenerate-first triangle, got {}",
            first.kind
        )));
    }
    let mut sum = 0.0;
    let mut power = 1.0; // t^k / k!
    for k in 0..=first.max_n() {
        if k > 0 {
            power *= t / k as f64;
        }
        if k >= n {
            sum += rational_to_f64(&first.rows[k][n]) * power;
        }
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degen::log_degen;
    use proptest::prelude::*;

    fn q(s: &str) -> RationalScalar {
        parse_rational(s).unwrap()
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(q("1/10"), q("0.1"));
        assert_eq!(q("-3/6"), q("-0.5"));
        assert_eq!(q("2.5e-3"), q("1/400"));
        assert_eq!(q("1e-8"), q("1/100000000"));
        assert_eq!(q("7"), q("7/1"));
        assert_eq!(format_rational(&q("0.25")), "1/4");
        assert_eq!(format_rational(&q("3")), "3/1");
        assert_eq!(format_rational(&q("-6/4")), "-3/2");
        for bad in ["", "1/0", "abc", "1.2.3", "--1", "1e", "/3"] {
            assert!(parse_rational(bad).is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn poly_coeffs_examples() {
        assert_eq!(poly_coeffs_falling_degen(0, &q("1/3")), vec![q("1")]);
        assert_eq!(
            poly_coeffs_falling_degen(2, &q("1/4")),
            vec![q("0"), q("-1/4"), q("1")]
        );
        assert_eq!(
            poly_coeffs_falling_degen(2, &q("1")),
            vec![q("0"), q("-1"), q("1")]
        );
    }

    #[test]
    fn triangle_examples() {
        let lambda = q("1/10");
        let s2 = stirling_triangle(StirlingKind::DegenerateSecond, &lambda, 4);
        assert_eq!(s2.get(2, 1), Some(&q("9/10")));
        let s1 = stirling_triangle(StirlingKind::DegenerateFirst, &lambda, 4);
        assert_eq!(s1.get(2, 1), Some(&q("-9/10")));
        let c1 = stirling_triangle(StirlingKind::ClassicalFirst, &lambda, 4);
        assert_eq!(c1.get(3, 1), Some(&q("2")));
        assert_eq!(c1.get(3, 2), Some(&q("-3")));
        assert_eq!(c1.get(2, 3), None);
        assert_eq!(c1.lambda(), &q("0"));
    }

    #[test]
    fn structural_invariants() {
        for kind in [
            StirlingKind::ClassicalFirst,
            StirlingKind::DegenerateFirst,
            StirlingKind::DegenerateSecond,
        ] {
            let t = stirling_triangle(kind, &q("2/7"), 12);
            assert_eq!(t.max_n(), 12);
            for n in 0..=12 {
                assert!(t.get(n, n).unwrap().is_one(), "{kind} diagonal at {n}");
                if n >= 1 {
                    assert!(t.get(n, 0).unwrap().is_zero(), "{kind} first column at {n}");
                }
            }
            assert_eq!(t.entries().count(), 13 * 14 / 2);
        }
    }

    #[test]
    fn inversion_examples() {
        for (lambda, max_n) in [("1/2", 0), ("1/10", 2), ("3/7", 20)] {
            let lambda = q(lambda);
            let first = stirling_triangle(StirlingKind::DegenerateFirst, &lambda, max_n);
            let second = stirling_triangle(StirlingKind::DegenerateSecond, &lambda, max_n);
            assert!(check_inversion(&first, &second).unwrap());
        }
    }

    #[test]
    fn inversion_errors() {
        let first = stirling_triangle(StirlingKind::DegenerateFirst, &q("1/3"), 5);
        let second = stirling_triangle(StirlingKind::DegenerateSecond, &q("1/3"), 6);
        assert!(matches!(
            check_inversion(&first, &second),
            Err(Error::DimensionMismatch { left: 5, right: 6 })
        ));
        let other = stirling_triangle(StirlingKind::DegenerateSecond, &q("1/4"), 5);
        assert!(matches!(
            check_inversion(&first, &other),
            Err(Error::ParameterMismatch(_))
        ));
        assert!(check_inversion(&other, &first).is_err());
    }

    #[test]
    fn inversion_fails_for_mismatched_pair() {
        // pairing S_1 with a triangle built for a different λ is not an inverse;
        // bypass the λ guard by comparing against classical S_2 (λ = 0)
        let lambda = q("1/3");
        let first = stirling_triangle(StirlingKind::DegenerateFirst, &lambda, 4);
        let mut second = stirling_triangle(StirlingKind::DegenerateSecond, &q("0"), 4);
        second.lambda = lambda;
        assert!(!check_inversion(&first, &second).unwrap());
        assert!(inversion_defect(&first, &second).unwrap() > q("0"));
    }

    fn classical_s1(n: usize, k: usize) -> BigInt {
        // signed recurrence s(n+1,k) = s(n,k-1) - n s(n,k)
        let mut table = vec![vec![BigInt::zero(); n + 1]; n + 1];
        table[0][0] = BigInt::one();
        for i in 1..=n {
            for j in 1..=i {
                table[i][j] = &table[i - 1][j - 1] - BigInt::from(i - 1) * &table[i - 1][j];
            }
        }
        table[n][k].clone()
    }

    fn classical_s2(n: usize, k: usize) -> BigInt {
        let mut table = vec![vec![BigInt::zero(); n + 1]; n + 1];
        table[0][0] = BigInt::one();
        for i in 1..=n {
            for j in 1..=i {
                table[i][j] = &table[i - 1][j - 1] + BigInt::from(j) * &table[i - 1][j];
            }
        }
        table[n][k].clone()
    }

    #[test]
    fn degenerate_triangles_reduce_to_classical_at_zero() {
        let zero = q("0");
        let first = stirling_triangle(StirlingKind::DegenerateFirst, &zero, 15);
        let second = stirling_triangle(StirlingKind::DegenerateSecond, &zero, 15);
        let classical = stirling_triangle(StirlingKind::ClassicalFirst, &zero, 15);
        for n in 0..=15 {
            for l in 0..=n {
                let s1 = BigRational::from_integer(classical_s1(n, l));
                let s2 = BigRational::from_integer(classical_s2(n, l));
                assert_eq!(first.get(n, l), Some(&s1));
                assert_eq!(classical.get(n, l), Some(&s1));
                assert_eq!(second.get(n, l), Some(&s2));
            }
        }
    }

    fn falling_exact(x: &RationalScalar, n: usize, lambda: &RationalScalar) -> RationalScalar {
        (0..n).fold(RationalScalar::one(), |acc, j| {
            acc * (x - lambda * rat(j as i64))
        })
    }

    #[test]
    fn identity_examples() {
        let lambda = q("1/10");
        assert!(identity_lhs(0, &q("2"), &lambda).unwrap().is_one());
        assert!(identity_rhs(0, &q("2"), &lambda).unwrap().is_one());
        assert_eq!(identity_lhs(1, &q("2"), &lambda).unwrap(), q("20/7"));
        assert_eq!(identity_rhs(1, &q("2"), &lambda).unwrap(), q("20/7"));
        assert_eq!(
            identity_lhs(2, &q("1"), &lambda).unwrap(),
            identity_rhs(2, &q("1"), &lambda).unwrap()
        );
        assert_eq!(
            identity_lhs(3, &q("1/2"), &q("1/7")).unwrap(),
            identity_rhs(3, &q("1/2"), &q("1/7")).unwrap()
        );
    }

    #[test]
    fn identity_singular_denominator() {
        // 1 - 3λ - jλ = 0 at λ = 1/5, j = 2
        let err = identity_lhs(4, &q("2"), &q("1/5")).unwrap_err();
        assert_eq!(err, Error::SingularDenominator { j: 2 });
        assert_eq!(identity_rhs(4, &q("2"), &q("1/5")).unwrap_err(), err);
        // k = 2 only touches j = 0, 1
        assert!(identity_lhs(2, &q("2"), &q("1/5")).is_ok());
    }

    #[test]
    fn closing_identity_grid() {
        for k in 0..=8 {
            for alpha in ["1/2", "1", "2", "7/3"] {
                for lambda in ["1/10", "1/5", "1/3"] {
                    let (alpha, lambda) = (q(alpha), q(lambda));
                    match identity_lhs(k, &alpha, &lambda) {
                        Ok(lhs) => assert_eq!(lhs, identity_rhs(k, &alpha, &lambda).unwrap()),
                        Err(Error::SingularDenominator { .. }) => {
                            assert!(identity_rhs(k, &alpha, &lambda).is_err())
                        }
                        Err(e) => panic!("{e}"),
                    }
                }
            }
        }
    }

    /// The right side with `S_{2,λ}(m, l)` in place of `S_{2,λ}(n, l)`: only `m = l`
    /// survives, leaving `Σ_n S_{1,λ}(k,n) Σ_{l<=n} M(l)`.
    fn swapped_index_rhs(
        k: usize,
        alpha: &RationalScalar,
        lambda: &RationalScalar,
    ) -> RationalScalar {
        let s2_lambda = stirling_triangle(StirlingKind::DegenerateSecond, lambda, k);
        let s1 = stirling_triangle(StirlingKind::ClassicalFirst, lambda, k);
        let s1_lambda = stirling_triangle(StirlingKind::DegenerateFirst, lambda, k);
        let mut sum = RationalScalar::zero();
        for n in 0..=k {
            for l in 0..=n {
                for m in 0..=l {
                    let s2 = s2_lambda
                        .get(m, l)
                        .cloned()
                        .unwrap_or_else(RationalScalar::zero);
                    sum += &s2
                        * &s1.rows[l][m]
                        * &s1_lambda.rows[k][n]
                        * moment_ratio(m, alpha, lambda).unwrap();
                }
            }
        }
        sum
    }

    #[test]
    fn swapped_index_reading_breaks_identity() {
        let (alpha, lambda) = (q("1"), q("1/10"));
        let lhs = identity_lhs(2, &alpha, &lambda).unwrap();
        assert_ne!(swapped_index_rhs(2, &alpha, &lambda), lhs);
        assert_eq!(identity_rhs(2, &alpha, &lambda).unwrap(), lhs);
    }

    #[test]
    fn log_series_coefficients_match_basis_change() {
        for lambda in ["1/10", "1/3", "3/7"] {
            let exact = q(lambda);
            let lambda = rational_to_f64(&exact);
            let first = stirling_triangle(StirlingKind::DegenerateFirst, &exact, 30);
            for n in 0..=8 {
                for &t in &[-0.1, -0.05, 0.05, 0.1] {
                    let series = log_degen_power_truncated(&first, n, t).unwrap();
                    let direct = log_degen(1.0 + t, lambda).unwrap().powi(n as i32)
                        / (1..=n).product::<usize>() as f64;
                    assert!(
                        (series - direct).abs() <= 1e-8 * direct.abs().max(1e-300),
                        "n={n}, t={t}, lambda={lambda}: {series} vs {direct}"
                    );
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]

        #[test]
        fn defining_expansions_hold(
            xn in -50i64..50, xd in 1i64..20,
            ln in 1i64..10, ld in 1i64..12,
            n in 0usize..=12,
        ) {
            let x = BigRational::new(xn.into(), xd.into());
            let lambda = BigRational::new(ln.into(), ld.into());
            let one = RationalScalar::one();
            let first = stirling_triangle(StirlingKind::DegenerateFirst, &lambda, n);
            let second = stirling_triangle(StirlingKind::DegenerateSecond, &lambda, n);
            let via_second = (0..=n)
                .map(|l| second.get(n, l).unwrap() * falling_exact(&x, l, &one))
                .fold(RationalScalar::zero(), |a, b| a + b);
            prop_assert_eq!(via_second, falling_exact(&x, n, &lambda));
            let via_first = (0..=n)
                .map(|l| first.get(n, l).unwrap() * falling_exact(&x, l, &lambda))
                .fold(RationalScalar::zero(), |a, b| a + b);
            prop_assert_eq!(via_first, falling_exact(&x, n, &one));
        }
    }
}
