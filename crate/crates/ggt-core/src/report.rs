//! Structured check reports.
//!
//! A report is the output of every checker and scenario: the checks it
//! ran, and every violation with a reproducible witness in external
//! syntax. An empty violation list means the bounded search found no
//! refutation; it is never a proof.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Disclaimer carried in every report header.
pub const VERIFICATION_NOTE: &str =
    "verification is bounded refutation search with explicit seeds, not proof";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// Checker key, e.g. `axioms.closure` or `hnn.base-intersection`.
    pub check: String,
    /// Chain level the check ran at, when applicable.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub level: Option<u32>,
    /// Offending elements, printed in external syntax.
    pub witnesses: Vec<String>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub scenario: String,
    pub note: String,
    pub parameters: BTreeMap<String, String>,
    pub seed: u64,
    pub checks_run: u64,
    pub violations: Vec<Violation>,
    pub wall_time_ms: u64,
}

impl Report {
    pub fn new(scenario: &str, seed: u64) -> Report {
        Report {
            scenario: scenario.to_string(),
            note: VERIFICATION_NOTE.to_string(),
            parameters: BTreeMap::new(),
            seed,
            checks_run: 0,
            violations: Vec::new(),
            wall_time_ms: 0,
        }
    }

    pub fn with_param(mut self, key: &str, value: impl ToString) -> Report {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn param(&mut self, key: &str, value: impl ToString) {
        self.parameters.insert(key.to_string(), value.to_string());
    }

    pub fn check(&mut self, ok: bool, violation: impl FnOnce() -> Violation) {
        self.checks_run += 1;
        if !ok {
            self.violations.push(violation());
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Folds a sub-report in: its checks and violations count here.
    pub fn absorb(&mut self, sub: Report) {
        self.checks_run += sub.checks_run;
        self.violations.extend(sub.violations);
    }
}

pub fn violation(check: &str, level: Option<u32>, witnesses: Vec<String>, detail: &str) -> Violation {
    Violation {
        check: check.to_string(),
        level,
        witnesses,
        detail: detail.to_string(),
    }
}
