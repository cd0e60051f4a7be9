//! Structured verdicts for statement checkers.
//!
//! Every checker produces a [`TheoremReport`]: which hypotheses were
//! verified (with witnesses), how large the conclusion defect came out, what
//! tolerances were in force, and the resulting verdict. Reports serialize to
//! stable JSON (maps are ordered) so byte-identical output for identical
//! inputs is a meaningful promise.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Hypothesis {
    pub name: String,
    pub pass: bool,
    pub witness: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TheoremReport {
    /// Statement identifier, e.g. "thm2.1"; the full catalog lives in the
    /// suite registry.
    pub theorem_id: String,
    pub hypotheses_verified: Vec<Hypothesis>,
    /// Scalar defect of the conclusion (0 = exact agreement). Equivalence
    /// checkers encode verdict agreement as 0/1.
    pub conclusion_defect: f64,
    /// Tolerance the defect was compared against.
    pub tolerance: f64,
    /// False when a precondition failed and the statement says nothing about
    /// the instance; such reports never count as failures.
    pub applicable: bool,
    pub pass: bool,
    /// RNG seed that produced the instance, when randomized.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Every numeric tolerance that influenced the verdict, by name.
    pub tolerances: BTreeMap<String, f64>,
}

impl TheoremReport {
    pub fn new(theorem_id: impl Into<String>) -> Self {
        TheoremReport {
            theorem_id: theorem_id.into(),
            hypotheses_verified: Vec::new(),
            conclusion_defect: 0.0,
            tolerance: 0.0,
            applicable: true,
            pass: false,
            seed: None,
            tolerances: BTreeMap::new(),
        }
    }

    pub fn hypothesis(
        &mut self,
        name: impl Into<String>,
        pass: bool,
        witness: impl std::fmt::Display,
    ) -> &mut Self {
        self.hypotheses_verified.push(Hypothesis {
            name: name.into(),
            pass,
            witness: witness.to_string(),
        });
        self
    }

    pub fn tolerance(&mut self, name: impl Into<String>, value: f64) -> &mut Self {
        self.tolerances.insert(name.into(), value);
        self
    }

    pub fn seed(&mut self, seed: u64) -> &mut Self {
        self.seed = Some(seed);
        self
    }

    /// Record the conclusion defect and derive the verdict: pass iff the
    /// report is applicable, every hypothesis held, and the defect is within
    /// tolerance. Non-finite defects are clamped to `f64::MAX` so reports
    /// stay serializable.
    pub fn conclude(mut self, defect: f64, tolerance: f64) -> Self {
        self.conclusion_defect = if defect.is_finite() { defect } else { f64::MAX };
        self.tolerance = tolerance;
        self.tolerances.insert("conclusion".into(), tolerance);
        let hypotheses_ok = self.hypotheses_verified.iter().all(|h| h.pass);
        self.pass = self.applicable && hypotheses_ok && self.conclusion_defect <= tolerance;
        self
    }

    /// A report for an instance the statement does not speak about.
    pub fn not_applicable(mut self, reason: impl std::fmt::Display) -> Self {
        self.hypotheses_verified.push(Hypothesis {
            name: "applicable".into(),
            pass: false,
            witness: reason.to_string(),
        });
        self.applicable = false;
        self.pass = false;
        self
    }

    /// Counts against a suite: applicable but failed.
    pub fn is_failure(&self) -> bool {
        self.applicable && !self.pass
    }
}
