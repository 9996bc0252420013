//! The JSON report. Field order is fixed by the structs; checks are sorted by
//! name before emission, so equal inputs give byte-identical output.

use std::time::Duration;

use bkk_core::cyclotomic::Cyclotomic;
use num_complex::Complex64;
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;
use serde_json::{Map, Value};

use crate::config::{RunConfig, Tolerances};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_NAME: &str = "bkk";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Round to 15 significant digits; `-0` becomes `0`.
pub fn round15(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    let r: f64 = format!("{x:.14e}").parse().expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// A real number, emitted with 15 significant digits.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Real(pub f64);

impl Serialize for Real {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(round15(self.0))
    }
}

/// A complex number as `[re, im]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexPair(pub Complex64);

impl Serialize for ComplexPair {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(2))?;
        seq.serialize_element(&Real(self.0.re))?;
        seq.serialize_element(&Real(self.0.im))?;
        seq.end()
    }
}

pub fn complex_value(z: Complex64) -> Value {
    serde_json::to_value(ComplexPair(z)).expect("pairs serialize")
}

pub fn real_value(x: f64) -> Value {
    serde_json::to_value(Real(x)).expect("reals serialize")
}

/// An element of `Q(ζ_n)`: power-basis coefficients as reduced fractions.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExactValue {
    pub conductor: u32,
    pub coeffs: Vec<String>,
}

impl From<&Cyclotomic> for ExactValue {
    fn from(c: &Cyclotomic) -> Self {
        Self {
            conductor: c.conductor(),
            coeffs: c.coefficients().iter().map(ToString::to_string).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn from_pass(pass: bool) -> Self {
        if pass {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    /// Informational checks are reported but do not affect the exit status.
    pub required: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_discrepancy: Option<Real>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<Real>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
    #[serde(skip_serializing_if = "Map::is_empty")]
    pub detail: Map<String, Value>,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool) -> Self {
        Self {
            name: name.into(),
            status: Status::from_pass(pass),
            required: true,
            max_discrepancy: None,
            tolerance: None,
            runtime_ms: None,
            detail: Map::new(),
        }
    }

    /// A check that could not run within the enumeration budget.
    pub fn skipped(name: impl Into<String>, reason: impl Into<String>) -> Self {
        let mut c = Self::new(name, false);
        c.status = Status::Skipped;
        c.detail.insert("reason".into(), Value::String(reason.into()));
        c
    }

    pub fn informational(mut self) -> Self {
        self.required = false;
        self
    }

    pub fn discrepancy(mut self, value: f64, tolerance: Option<f64>) -> Self {
        self.max_discrepancy = Some(Real(value));
        self.tolerance = tolerance.map(Real);
        self
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.detail.insert(key.into(), value.into());
        self
    }

    pub fn timed(mut self, elapsed: Duration) -> Self {
        self.runtime_ms = Some(elapsed.as_millis() as u64);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConfigEcho {
    pub canonical: String,
    pub group: String,
    pub q: u32,
    pub weights: String,
    pub psi: u32,
    pub mode: String,
    pub tol: Tolerances,
    pub convention: String,
}

impl From<&RunConfig> for ConfigEcho {
    fn from(c: &RunConfig) -> Self {
        Self {
            canonical: c.canonical(),
            group: c.group.to_string(),
            q: c.q,
            weights: c.weights.canonical_string(),
            psi: c.psi,
            mode: c.mode.to_string(),
            tol: c.tol,
            convention: c.convention.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GammaEntry {
    pub datum: String,
    pub value: ComplexPair,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<ExactValue>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IrrepEntry {
    /// Position in the canonical row order.
    pub index: usize,
    pub label: String,
    pub family: String,
    pub dim: u64,
    pub datum: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GammaRecord {
    pub convention: String,
    pub by_datum: Vec<GammaEntry>,
    pub irreducibles: Vec<IrrepEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool: Tool,
    pub command: String,
    pub config: ConfigEcho,
    pub status: Status,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<GammaRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub calibration: Option<Value>,
}

impl Report {
    pub fn new(command: impl Into<String>, config: &RunConfig) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            tool: Tool {
                name: TOOL_NAME,
                version: TOOL_VERSION,
            },
            command: command.into(),
            config: config.into(),
            status: Status::Pass,
            checks: Vec::new(),
            gamma: None,
            calibration: None,
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    /// Sort checks, drop runtimes unless asked for, and set the overall
    /// status: any required failure fails; otherwise any required skip skips.
    pub fn finish(mut self, timings: bool) -> Self {
        self.checks.sort_by(|a, b| a.name.cmp(&b.name));
        if !timings {
            for c in &mut self.checks {
                c.runtime_ms = None;
            }
        }
        let required = || self.checks.iter().filter(|c| c.required);
        self.status = if required().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else if required().any(|c| c.status == Status::Skipped) {
            Status::Skipped
        } else {
            Status::Pass
        };
        self
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use bkk_core::rootdata::Preset;

    #[test]
    fn rounding_keeps_fifteen_digits() {
        assert_eq!(round15(0.1 + 0.2), 0.3);
        assert_eq!(round15(-0.0).to_bits(), 0.0f64.to_bits());
        assert_eq!(round15(1.0 / 3.0), 0.333333333333333);
        assert_eq!(serde_json::to_string(&ComplexPair(Complex64::new(2.0, -1e-20))).unwrap(), "[2.0,-1e-20]");
    }

    #[test]
    fn status_folds_required_checks_only() {
        let config = RunConfig::new(Preset::Gl2, 3).unwrap();
        let mut r = Report::new("verify", &config);
        r.push(Check::new("b", true));
        r.push(Check::new("a", false).informational());
        let r = r.finish(false);
        assert_eq!(r.status, Status::Pass);
        assert_eq!(r.checks[0].name, "a");
        let mut r = Report::new("verify", &config);
        r.push(Check::skipped("x", "budget"));
        assert_eq!(r.finish(false).status, Status::Skipped);
    }

    #[test]
    fn timings_are_opt_in() {
        let config = RunConfig::new(Preset::Gl2, 3).unwrap();
        let mut r = Report::new("verify", &config);
        r.push(Check::new("a", true).timed(Duration::from_millis(5)));
        assert!(!r.clone().finish(false).to_json().contains("runtime_ms"));
        assert!(r.finish(true).to_json().contains("\"runtime_ms\": 5"));
    }
}
