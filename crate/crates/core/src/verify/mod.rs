//! Verification suites: every identity of the construction checked numerically
//! or symbolically, with known misprints reported as errata.
//!
//! An ordinary check passes when its residual is at most its threshold. An
//! erratum check measures the discrepancy of a formula in its commonly printed
//! form; it passes when the discrepancy reproduces, i.e. is at least its
//! threshold.

mod algebra;
mod basis;
mod laguerre;
mod quadrature;
mod transform;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use algebra::random_free_expr;

/// Default thresholds, one per check id.
pub const TOLERANCES: &[(&str, f64)] = &[
    ("algebra.critical-pairs.graded", 0.0),
    ("algebra.critical-pairs.standard", 1.0),
    ("algebra.e-correction.casimir.inferred", 0.0),
    ("algebra.e-correction.casimir.printed", 1.0),
    ("algebra.e-correction.commutator.inferred", 0.0),
    ("algebra.e-correction.commutator.printed", 1.0),
    ("algebra.hermiticity", 1e-8),
    ("algebra.k3-commutator.printed", 1.0),
    ("algebra.kernel", 1e-9),
    ("algebra.ladder", 1e-9),
    ("algebra.normal-form.idempotence", 0.0),
    ("algebra.normal-form.linearity", 0.0),
    ("algebra.normal-form.products.graded", 0.0),
    ("algebra.normal-form.products.standard", 1.0),
    ("algebra.su2.casimir", 1e-8),
    ("algebra.su2.commutator", 1e-8),
    ("algebra.su2.k3-ladder", 1e-8),
    ("algebra.su2.plane-casimir", 1e-8),
    ("basis.m0-real", 1e-15),
    ("basis.ode", 1e-9),
    ("basis.orthonormality", 1e-10),
    ("basis.plane-orthonormality", 1e-10),
    ("basis.reflection.signed", 1e-12),
    ("basis.reflection.unsigned", 1.0),
    ("laguerre.composed.lower-degree-raise-order-two.corrected", 1e-10),
    ("laguerre.composed.lower-degree-raise-order-two.printed", 0.5),
    ("laguerre.composed.raise-degree-lower-order-two.corrected", 1e-10),
    ("laguerre.composed.raise-degree-lower-order-two.printed", 1e-3),
    ("laguerre.derivative", 1e-6),
    ("laguerre.oracle", 1e-12),
    ("laguerre.recurrence.lower-degree", 1e-10),
    ("laguerre.recurrence.lower-order", 1e-10),
    ("laguerre.recurrence.raise-degree", 1e-10),
    ("laguerre.recurrence.raise-order", 1e-10),
    ("laguerre.reflection", 1e-12),
    ("quadrature.interlacing", 0.0),
    ("quadrature.moments", 1e-12),
    ("quadrature.plane-vs-halfline", 1e-13),
    ("quadrature.weight-sum", 1e-12),
    ("transform.equivariance", 1e-7),
    ("transform.parseval", 1e-10),
    ("transform.parseval.above-cap", 1e-10),
    ("transform.rotation.full-turn", 1e-10),
    ("transform.rotation.group-law", 1e-8),
    ("transform.rotation.multiplet-norms", 1e-10),
    ("transform.rotation.unitarity", 1e-10),
    ("transform.roundtrip", 1e-8),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Laguerre,
    Basis,
    Algebra,
    Quadrature,
    Transform,
    All,
}

impl Suite {
    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Laguerre => "laguerre",
            Suite::Basis => "basis",
            Suite::Algebra => "algebra",
            Suite::Quadrature => "quadrature",
            Suite::Transform => "transform",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Suite::Laguerre, Suite::Basis, Suite::Algebra, Suite::Quadrature, Suite::Transform, Suite::All]
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| Error::Domain(format!("unknown suite {s:?}")))
    }
}

/// One verified identity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    /// The identity being checked, by name.
    pub reference: String,
    pub max_residual: f64,
    pub threshold: f64,
    pub passed: bool,
    /// Present for erratum checks: what is wrong with the printed form.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub erratum: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub checks: Vec<CheckRecord>,
    pub overall: String,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.overall == "pass"
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {}", self.suite)?;
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            let cmp = if c.erratum.is_some() { ">=" } else { "<=" };
            writeln!(
                f,
                "{status} {:<58} {:.3e} {cmp} {:.1e}  {}",
                c.id, c.max_residual, c.threshold, c.reference
            )?;
            if let Some(note) = &c.erratum {
                writeln!(f, "     erratum: {note}")?;
            }
        }
        write!(f, "overall {}", self.overall)
    }
}

/// Parameters shared by all suites.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    pub two_j_max: u32,
    pub seed: u64,
    pub overrides: BTreeMap<String, f64>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { two_j_max: 16, seed: 0, overrides: BTreeMap::new() }
    }
}

impl VerifyOptions {
    /// Rejects overrides for ids missing from [`TOLERANCES`].
    pub fn with_override(mut self, id: &str, value: f64) -> Result<Self> {
        if !TOLERANCES.iter().any(|(k, _)| *k == id) {
            return Err(Error::Domain(format!("no check with id {id:?}")));
        }
        if !(value.is_finite() && value >= 0.0) {
            return Err(Error::Domain(format!("tolerance for {id} must be finite and non-negative")));
        }
        self.overrides.insert(id.to_string(), value);
        Ok(self)
    }

    fn threshold(&self, id: &str) -> f64 {
        self.overrides.get(id).copied().unwrap_or_else(|| {
            TOLERANCES
                .iter()
                .find(|(k, _)| *k == id)
                .map(|(_, v)| *v)
                .unwrap_or_else(|| panic!("check id {id} missing from the tolerance table"))
        })
    }

    /// Labels `2j` up to the requested cap, limited to `cap` when smaller.
    fn capped(&self, two_cap: u32) -> u32 {
        self.two_j_max.min(two_cap)
    }

    fn check(&self, id: &str, reference: &str, residual: f64) -> CheckRecord {
        let threshold = self.threshold(id);
        CheckRecord {
            id: id.to_string(),
            reference: reference.to_string(),
            max_residual: residual,
            threshold,
            passed: residual <= threshold,
            erratum: None,
        }
    }

    fn erratum(&self, id: &str, reference: &str, discrepancy: f64, note: &str) -> CheckRecord {
        let threshold = self.threshold(id);
        CheckRecord {
            id: id.to_string(),
            reference: reference.to_string(),
            max_residual: discrepancy,
            threshold,
            passed: discrepancy >= threshold,
            erratum: Some(note.to_string()),
        }
    }
}

/// Runs a suite and assembles the report, checks sorted by id.
pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<VerificationReport> {
    let mut checks = Vec::new();
    let all = suite == Suite::All;
    if all || suite == Suite::Laguerre {
        checks.extend(laguerre::checks(opts)?);
    }
    if all || suite == Suite::Basis {
        checks.extend(basis::checks(opts)?);
    }
    if all || suite == Suite::Algebra {
        checks.extend(algebra::checks(opts)?);
    }
    if all || suite == Suite::Quadrature {
        checks.extend(quadrature::checks(opts)?);
    }
    if all || suite == Suite::Transform {
        checks.extend(transform::checks(opts)?);
    }
    checks.sort_by(|a, b| a.id.cmp(&b.id));
    let overall = if checks.iter().all(|c| c.passed) { "pass" } else { "fail" };
    Ok(VerificationReport { suite: suite.as_str().to_string(), checks, overall: overall.to_string() })
}

fn max_of(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, |acc, v| if v.is_nan() || acc.is_nan() { f64::NAN } else { acc.max(v) })
}
