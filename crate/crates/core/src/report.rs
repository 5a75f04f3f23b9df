//! Machine-readable results of the numerical checks.

use std::collections::BTreeMap;
use std::time::Instant;

use num_complex::Complex64;
use serde::Serialize;
use serde_json::Value;

/// A real or complex observation; complex values serialize as `[re, im]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Scalar {
    Real(f64),
    Complex(Complex64),
}

impl Scalar {
    fn distance(&self, other: &Scalar) -> f64 {
        let as_c = |s: &Scalar| match *s {
            Scalar::Real(v) => Complex64::new(v, 0.0),
            Scalar::Complex(c) => c,
        };
        (as_c(self) - as_c(other)).norm()
    }

    fn real(&self) -> f64 {
        match *self {
            Scalar::Real(v) => v,
            Scalar::Complex(c) => c.norm(),
        }
    }
}

impl From<f64> for Scalar {
    fn from(v: f64) -> Self {
        Scalar::Real(v)
    }
}

impl From<Complex64> for Scalar {
    fn from(c: Complex64) -> Self {
        Scalar::Complex(c)
    }
}

/// How `pass` is decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// `|observed - expected| <= tolerance`.
    Tolerance,
    /// `observed <= expected`.
    UpperBound,
    /// `observed >= expected`.
    LowerBound,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub params: BTreeMap<String, Value>,
    pub kind: CheckKind,
    pub observed: Scalar,
    pub expected: Scalar,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub runtime_ms: f64,
}

/// Ordered parameter record.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Params(BTreeMap<String, Value>);

impl Params {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.0.insert(key.to_string(), value.into());
        self
    }
}

impl CheckReport {
    fn build(
        check: &str,
        params: Params,
        kind: CheckKind,
        observed: Scalar,
        expected: Scalar,
        tolerance: Option<f64>,
    ) -> Self {
        let pass = match kind {
            CheckKind::Tolerance => observed.distance(&expected) <= tolerance.unwrap_or(0.0),
            CheckKind::UpperBound => observed.real() <= expected.real(),
            CheckKind::LowerBound => observed.real() >= expected.real(),
        };
        Self {
            check: check.to_string(),
            params: params.0,
            kind,
            observed,
            expected,
            tolerance,
            pass,
            note: None,
            runtime_ms: 0.0,
        }
    }

    pub fn within(
        check: &str,
        params: Params,
        observed: impl Into<Scalar>,
        expected: impl Into<Scalar>,
        tolerance: f64,
    ) -> Self {
        Self::build(
            check,
            params,
            CheckKind::Tolerance,
            observed.into(),
            expected.into(),
            Some(tolerance),
        )
    }

    pub fn at_most(check: &str, params: Params, observed: f64, bound: f64) -> Self {
        Self::build(
            check,
            params,
            CheckKind::UpperBound,
            observed.into(),
            bound.into(),
            None,
        )
    }

    pub fn at_least(check: &str, params: Params, observed: f64, floor: f64) -> Self {
        Self::build(
            check,
            params,
            CheckKind::LowerBound,
            observed.into(),
            floor.into(),
            None,
        )
    }

    /// A check that could not be evaluated.
    pub fn failed(check: &str, params: Params, error: &crate::Error) -> Self {
        let mut r = Self::build(
            check,
            params,
            CheckKind::Tolerance,
            f64::NAN.into(),
            0.0.into(),
            Some(0.0),
        );
        r.pass = false;
        r.note = Some(error.to_string());
        r
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn with_runtime(mut self, started: Instant) -> Self {
        self.runtime_ms = started.elapsed().as_secs_f64() * 1e3;
        self
    }

    fn sort_key(&self) -> (String, String) {
        (
            self.check.clone(),
            serde_json::to_string(&self.params).unwrap_or_default(),
        )
    }
}

/// Sorts by check name, then by the serialized parameter record.
pub fn sort_reports(reports: &mut [CheckReport]) {
    reports.sort_by_cached_key(|r| r.sort_key());
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_follows_the_kind() {
        let p = Params::new();
        assert!(CheckReport::within("a", p.clone(), 1.0, 1.05, 0.1).pass);
        assert!(!CheckReport::within("a", p.clone(), 1.0, 1.2, 0.1).pass);
        assert!(CheckReport::at_most("b", p.clone(), 0.5, 1.0).pass);
        assert!(!CheckReport::at_most("b", p.clone(), f64::NAN, 1.0).pass);
        assert!(CheckReport::at_least("c", p, 2e6, 1e6).pass);
    }

    #[test]
    fn complex_values_serialize_as_pairs() {
        let r = CheckReport::within(
            "z",
            Params::new().with("mass", 1.0),
            Complex64::new(1.0, -2.0),
            Complex64::new(1.0, -2.0),
            0.0,
        );
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["observed"], serde_json::json!([1.0, -2.0]));
        assert_eq!(json["params"]["mass"], serde_json::json!(1.0));
        assert!(json.get("note").is_none());
    }

    #[test]
    fn sorting_is_by_name_then_params() {
        let mut v = vec![
            CheckReport::at_most("b", Params::new().with("x", 2), 0.0, 1.0),
            CheckReport::at_most("a", Params::new(), 0.0, 1.0),
            CheckReport::at_most("b", Params::new().with("x", 1), 0.0, 1.0),
        ];
        sort_reports(&mut v);
        let order: Vec<_> = v
            .iter()
            .map(|r| (r.check.as_str(), r.params.get("x").cloned()))
            .collect();
        assert_eq!(order[0].0, "a");
        assert_eq!(order[1].1, Some(serde_json::json!(1)));
    }
}
