//! Structured verification results.
//!
//! A [`VerificationReport`] is a list of cases; each case records its
//! parameters, the largest residual magnitude seen and the first failing
//! cell. Reports serialise to JSON and merge associatively.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::scalar_core::scalar::Scalar;

/// Residual tolerance used in float mode; exact mode always demands zero.
pub const FLOAT_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseReport {
    pub params: BTreeMap<String, String>,
    pub residual_max: f64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failing_cell: Option<String>,
}

impl CaseReport {
    pub fn param(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub cases: Vec<CaseReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>) -> Self {
        VerificationReport { suite: suite.into(), cases: Vec::new(), seed: None }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn single(suite: impl Into<String>, case: CaseReport) -> Self {
        let mut r = Self::new(suite);
        r.cases.push(case);
        r
    }

    pub fn push(&mut self, case: CaseReport) {
        self.cases.push(case);
    }

    /// Appends all cases of `other`, tagging each with its suite name.
    pub fn absorb(&mut self, other: VerificationReport) {
        for case in other.cases {
            let case = if case.params.contains_key("check") {
                case
            } else {
                case.param("check", &other.suite)
            };
            self.cases.push(case);
        }
    }

    /// Concatenates cases; the suite name and seed of `self` win.
    pub fn merge(mut self, other: VerificationReport) -> Self {
        self.cases.extend(other.cases);
        if self.seed.is_none() {
            self.seed = other.seed;
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseReport> {
        self.cases.iter().filter(|c| !c.pass)
    }

    pub fn residual_max(&self) -> f64 {
        self.cases.iter().map(|c| c.residual_max).fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serialisable")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let failed = self.failures().count();
        write!(
            f,
            "{}: {} case(s), {} failed, max residual {:e}",
            self.suite,
            self.cases.len(),
            failed,
            self.residual_max()
        )?;
        if let Some(seed) = self.seed {
            write!(f, ", seed {seed}")?;
        }
        if let Some(c) = self.failures().next() {
            write!(f, "; first failure at {}", c.failing_cell.as_deref().unwrap_or("?"))?;
        }
        Ok(())
    }
}

/// Accumulates residuals of one case.
#[derive(Clone, Debug)]
pub struct ResidualTracker {
    tolerance: f64,
    max: f64,
    checked: usize,
    failing: Option<String>,
}

impl Default for ResidualTracker {
    fn default() -> Self {
        Self::new()
    }
}

impl ResidualTracker {
    pub fn new() -> Self {
        ResidualTracker { tolerance: FLOAT_TOLERANCE, max: 0.0, checked: 0, failing: None }
    }

    pub fn with_tolerance(tolerance: f64) -> Self {
        ResidualTracker { tolerance, ..Self::new() }
    }

    /// Records `residual` at `cell`; returns whether it counts as zero.
    pub fn record<S: Scalar>(&mut self, cell: impl fmt::Display, residual: &S) -> bool {
        self.checked += 1;
        let mag = residual.magnitude();
        if mag > self.max || mag.is_nan() {
            self.max = if mag.is_nan() { f64::INFINITY } else { mag };
        }
        let ok = residual.within(self.tolerance);
        if !ok && self.failing.is_none() {
            self.failing = Some(cell.to_string());
        }
        ok
    }

    /// Records a failure that has no numeric residual (e.g. a zero divisor).
    pub fn fail(&mut self, cell: impl fmt::Display) {
        self.checked += 1;
        self.max = f64::INFINITY;
        if self.failing.is_none() {
            self.failing = Some(cell.to_string());
        }
    }

    pub fn checked(&self) -> usize {
        self.checked
    }

    pub fn pass(&self) -> bool {
        self.failing.is_none()
    }

    pub fn into_case(self) -> CaseReport {
        let mut params = BTreeMap::new();
        params.insert("cells".to_string(), self.checked.to_string());
        CaseReport { params, residual_max: self.max, pass: self.failing.is_none(), failing_cell: self.failing }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar_core::scalar::Rational;

    #[test]
    fn tracker_reports_first_failure() {
        let mut t = ResidualTracker::new();
        assert!(t.record("a", &Rational::from(0)));
        assert!(!t.record("b", &Rational::from(-3)));
        assert!(!t.record("c", &Rational::from(5)));
        let case = t.into_case();
        assert!(!case.pass);
        assert_eq!(case.failing_cell.as_deref(), Some("b"));
        assert_eq!(case.residual_max, 5.0);
    }

    #[test]
    fn float_residuals_use_tolerance() {
        let mut t = ResidualTracker::with_tolerance(1e-6);
        assert!(t.record("x", &1e-9f64));
        assert!(!t.record("y", &1e-3f64));
    }

    #[test]
    fn json_round_trip_and_merge() {
        let mut a = VerificationReport::new("s").with_seed(7);
        a.push(ResidualTracker::new().into_case().param("n", 2));
        let b = VerificationReport::single("t", ResidualTracker::new().into_case());
        let merged = a.clone().merge(b.clone());
        assert_eq!(merged.cases.len(), 2);
        assert_eq!(merged.seed, Some(7));
        // Associativity of merge on case order.
        let c = VerificationReport::new("u");
        assert_eq!(a.clone().merge(b.clone()).merge(c.clone()).cases, a.merge(b.merge(c)).cases);
        let json = merged.to_json();
        let back: VerificationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, merged);
        assert!(json.contains("\"residual_max\""));
    }
}
