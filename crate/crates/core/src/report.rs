//! Versioned JSON run reports. Complex numbers are `{re, im}` objects and
//! series are lists of exponent-vector/coefficient pairs. Object keys are
//! sorted, so identical runs produce identical bytes.

use crate::error::Error;
use crate::lauricella::PeriodMatrix;
use crate::ncalg::MultiSeries;
use crate::ring::Coeff;
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt::Display;

type C = Complex64;

pub const SCHEMA_VERSION: u32 = 1;

/// Environment variable replacing every numeric check tolerance.
pub const TOL_ENV: &str = "PERIODLAB_TOL";

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Cx {
    pub re: f64,
    pub im: f64,
}

impl From<C> for Cx {
    fn from(z: C) -> Self {
        Cx { re: z.re, im: z.im }
    }
}

pub fn complex(z: C) -> Value {
    json!(Cx::from(z))
}

pub fn matrix(m: &[Vec<C>]) -> Value {
    Value::Array(m.iter().map(|r| Value::Array(r.iter().map(|z| complex(*z)).collect())).collect())
}

/// Numeric series as `[{exponents, re, im}]`, in exponent order.
pub fn series(s: &MultiSeries<C>) -> Value {
    Value::Array(
        s.terms()
            .map(|(e, c)| json!({ "exponents": e.0, "re": c.re, "im": c.im }))
            .collect(),
    )
}

/// `{realization, max_degree, entries: [{i, j, terms}]}` with 1-based indices.
pub fn series_matrix(m: &PeriodMatrix<MultiSeries<C>>, max_degree: usize) -> Value {
    let mut entries = Vec::new();
    for (i, row) in m.entries.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            entries.push(json!({ "i": i + 1, "j": j + 1, "terms": series(e) }));
        }
    }
    json!({ "realization": m.realization, "max_degree": max_degree, "entries": entries })
}

/// `{realization, entries}` with rows of `{re, im}`.
pub fn period_matrix(m: &PeriodMatrix<C>) -> Value {
    json!({ "realization": m.realization, "entries": matrix(&m.entries) })
}

/// Symbolic series as `[{exponents, coeff: "text"}]`.
pub fn symbolic_series<R: Coeff + Display>(s: &MultiSeries<R>) -> Value {
    Value::Array(
        s.terms()
            .map(|(e, c)| json!({ "exponents": e.0, "coeff": c.to_string() }))
            .collect(),
    )
}

/// One verified quantity. Exact checks carry no tolerance.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: Option<f64>,
    pub pass: bool,
}

impl Check {
    pub fn numeric(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        let tolerance = tolerance_override().unwrap_or(tolerance);
        Check {
            name: name.into(),
            value,
            tolerance: Some(tolerance),
            pass: value.is_finite() && value <= tolerance,
        }
    }

    pub fn exact(name: impl Into<String>, holds: bool) -> Self {
        Check {
            name: name.into(),
            value: if holds { 0.0 } else { 1.0 },
            tolerance: None,
            pass: holds,
        }
    }

    /// A check whose computation itself failed.
    pub fn failed(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            value: f64::NAN,
            tolerance: None,
            pass: false,
        }
    }
}

/// The value of `PERIODLAB_TOL`, if set to a positive number.
pub fn tolerance_override() -> Option<f64> {
    std::env::var(TOL_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<f64>().ok())
        .filter(|t| *t > 0.0 && t.is_finite())
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: String,
    pub config: Value,
    pub results: Value,
    pub checks: Vec<Check>,
    pub tolerances: BTreeMap<String, f64>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<Value>,
}

impl RunReport {
    pub fn new(command: &str, config: Value) -> Self {
        RunReport {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            config,
            results: Value::Object(Default::default()),
            checks: Vec::new(),
            tolerances: BTreeMap::new(),
            passed: true,
            error: None,
        }
    }

    pub fn set_result(&mut self, key: &str, v: Value) {
        if let Value::Object(m) = &mut self.results {
            m.insert(key.to_string(), v);
        }
    }

    pub fn tolerance(&mut self, key: &str, tol: f64) {
        self.tolerances.insert(key.to_string(), tol);
    }

    pub fn push(&mut self, c: Check) {
        self.passed &= c.pass;
        self.checks.push(c);
    }

    pub fn fail_with(&mut self, e: &Error) {
        self.passed = false;
        self.error = Some(json!({ "kind": error_kind(e), "message": e.to_string() }));
    }

    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("report serializes");
        serde_json::to_string_pretty(&v).expect("value serializes")
    }

    /// Plain-text table of the checks.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let w = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(5).max(5);
        out.push_str(&format!("{:<w$}  {:>12}  {:>10}  result\n", "check", "value", "tol"));
        for c in &self.checks {
            let tol = c.tolerance.map(|t| format!("{t:.1e}")).unwrap_or_else(|| "exact".into());
            out.push_str(&format!(
                "{:<w$}  {:>12.3e}  {:>10}  {}\n",
                c.name,
                c.value,
                tol,
                if c.pass { "pass" } else { "FAIL" }
            ));
        }
        if let Some(e) = &self.error {
            out.push_str(&format!("error: {}\n", e["message"].as_str().unwrap_or("")));
        }
        out
    }
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::AlphabetMismatch(..) => "alphabet_mismatch",
        Error::LetterOutOfRange { .. } => "letter_out_of_range",
        Error::NotInvertible => "not_invertible",
        Error::NonzeroConstant => "nonzero_constant",
        Error::ConstantNotOne => "constant_not_one",
        Error::NonUnital(_) => "non_unital",
        Error::WeightExceeded { .. } => "weight_exceeded",
        Error::Domain(_) => "domain",
        Error::NonGeneric(_) => "non_generic",
        Error::Quadrature(_) => "quadrature",
        Error::Config(_) => "config",
        Error::Path(_) => "path",
        Error::NoBackend(_) => "no_backend",
        Error::NegativeLef(_) => "negative_lef",
        Error::Singular => "singular",
        Error::UnknownSuite(_) => "unknown_suite",
        Error::Io(_) => "io",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_json() {
        let mut r = RunReport::new("x", json!({ "b": 1, "a": 2 }));
        r.set_result("z", complex(C::new(1.0, -2.0)));
        r.push(Check::exact("e", true));
        let a = r.to_json();
        assert_eq!(a, r.clone().to_json());
        assert!(a.find("\"a\"").unwrap() < a.find("\"b\"").unwrap());
        assert!(a.contains("\"re\": 1.0"));
    }
}
