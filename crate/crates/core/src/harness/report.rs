//! Structured pass/fail records for oracle-versus-closed-form comparisons.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::stirling::{format_rational, rational_to_f64, RationalScalar};

/// A compared quantity: a float, or an exact rational / message as a string.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ReportValue {
    Real(f64),
    Text(String),
}

impl From<f64> for ReportValue {
    fn from(value: f64) -> Self {
        ReportValue::Real(value)
    }
}

impl From<&RationalScalar> for ReportValue {
    fn from(value: &RationalScalar) -> Self {
        ReportValue::Text(format_rational(value))
    }
}

impl std::fmt::Display for ReportValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ReportValue::Real(v) => write!(f, "{v}"),
            ReportValue::Text(s) => f.write_str(s),
        }
    }
}

/// Errors that cannot be represented (NaN, ∞, failed evaluation) are
/// reported as this so every report stays valid JSON.
pub const UNREPRESENTABLE_ERROR: f64 = f64::MAX;

/// One comparison. `passed == (rel_error <= tolerance)`, except for exact
/// rational checks where `passed == (expected == actual)` and the tolerance
/// is 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check_id: String,
    pub inputs: BTreeMap<String, String>,
    pub expected: ReportValue,
    pub actual: ReportValue,
    pub abs_error: f64,
    pub rel_error: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub runtime_ms: f64,
}

/// Builds an `inputs` map from `(key, value)` pairs.
pub fn inputs<'a, I, V>(pairs: I) -> BTreeMap<String, String>
where
    I: IntoIterator<Item = (&'a str, V)>,
    V: ToString,
{
    pairs
        .into_iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

impl VerificationReport {
    /// Floating-point comparison; relative error falls back to absolute
    /// error when `expected == 0`.
    pub fn real(
        check_id: impl Into<String>,
        inputs: BTreeMap<String, String>,
        expected: f64,
        actual: f64,
        tolerance: f64,
    ) -> Self {
        let mut abs_error = (actual - expected).abs();
        let mut rel_error = if expected == 0.0 {
            abs_error
        } else {
            abs_error / expected.abs()
        };
        if !abs_error.is_finite() || !rel_error.is_finite() {
            abs_error = UNREPRESENTABLE_ERROR;
            rel_error = UNREPRESENTABLE_ERROR;
        }
        let passed = rel_error <= tolerance && actual.is_finite() && expected.is_finite();
        Self {
            check_id: check_id.into(),
            inputs,
            expected: sanitize(expected),
            actual: sanitize(actual),
            abs_error,
            rel_error,
            tolerance,
            passed,
            runtime_ms: 0.0,
        }
    }

    /// Exact comparison of two rationals, serialized as `"num/den"`.
    pub fn rational(
        check_id: impl Into<String>,
        inputs: BTreeMap<String, String>,
        expected: &RationalScalar,
        actual: &RationalScalar,
    ) -> Self {
        let diff = rational_to_f64(&(actual - expected)).abs();
        let scale = rational_to_f64(expected).abs();
        let rel_error = if scale == 0.0 { diff } else { diff / scale };
        Self {
            check_id: check_id.into(),
            inputs,
            expected: expected.into(),
            actual: actual.into(),
            abs_error: diff,
            rel_error,
            tolerance: 0.0,
            passed: expected == actual,
            runtime_ms: 0.0,
        }
    }

    /// A check whose evaluation itself failed.
    pub fn failed(
        check_id: impl Into<String>,
        inputs: BTreeMap<String, String>,
        expected: ReportValue,
        error: &Error,
        tolerance: f64,
    ) -> Self {
        Self {
            check_id: check_id.into(),
            inputs,
            expected,
            actual: ReportValue::Text(format!("error: {error}")),
            abs_error: UNREPRESENTABLE_ERROR,
            rel_error: UNREPRESENTABLE_ERROR,
            tolerance,
            passed: false,
            runtime_ms: 0.0,
        }
    }

    pub fn with_runtime_ms(mut self, runtime_ms: f64) -> Self {
        self.runtime_ms = runtime_ms;
        self
    }
}

fn sanitize(value: f64) -> ReportValue {
    if value.is_finite() {
        ReportValue::Real(value)
    } else {
        ReportValue::Text(value.to_string())
    }
}

/// Final line of a suite run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub suite: String,
    pub passed: usize,
    pub failed: usize,
}

impl SuiteSummary {
    pub fn from_reports(suite: impl Into<String>, reports: &[VerificationReport]) -> Self {
        let passed = reports.iter().filter(|r| r.passed).count();
        Self {
            suite: suite.into(),
            passed,
            failed: reports.len() - passed,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stirling::parse_rational;

    #[test]
    fn real_report_errors() {
        let r = VerificationReport::real("x", inputs([("a", 1)]), 2.0, 2.002, 1e-3);
        assert!((r.abs_error - 0.002).abs() < 1e-15);
        assert!((r.rel_error - 0.001).abs() < 1e-12);
        assert!(r.passed == (r.rel_error <= r.tolerance));
        let r = VerificationReport::real("x", inputs([("a", 1)]), 0.0, 0.01, 0.05);
        assert_eq!(r.rel_error, r.abs_error);
        assert!(r.passed);
    }

    #[test]
    fn non_finite_values_fail_and_stay_serializable() {
        let r = VerificationReport::real("x", BTreeMap::new(), 1.0, f64::NAN, 1.0);
        assert!(!r.passed);
        assert_eq!(r.rel_error, UNREPRESENTABLE_ERROR);
        let json = serde_json::to_string(&r).unwrap();
        let back: VerificationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back.actual, ReportValue::Text("NaN".into()));
    }

    #[test]
    fn rational_report() {
        let a = parse_rational("20/7").unwrap();
        let r = VerificationReport::rational("q", BTreeMap::new(), &a, &a);
        assert!(r.passed);
        assert_eq!(r.expected, ReportValue::Text("20/7".into()));
        let b = parse_rational("3").unwrap();
        let r = VerificationReport::rational("q", BTreeMap::new(), &a, &b);
        assert!(!r.passed);
        assert_eq!(r.actual, ReportValue::Text("3/1".into()));
    }

    #[test]
    fn json_shape() {
        let r = VerificationReport::real("id", inputs([("k", "v")]), 1.0, 1.0, 0.0)
            .with_runtime_ms(1.5);
        let value: serde_json::Value = serde_json::to_value(&r).unwrap();
        let keys: Vec<&str> = value
            .as_object()
            .unwrap()
            .keys()
            .map(String::as_str)
            .collect();
        assert_eq!(
            keys,
            [
                "abs_error",
                "actual",
                "check_id",
                "expected",
                "inputs",
                "passed",
                "rel_error",
                "runtime_ms",
                "tolerance"
            ]
        );
    }
}
