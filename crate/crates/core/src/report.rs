//! Shared verification report format.
//!
//! Every check produces a [`VerificationRecord`]; a [`VerificationReport`]
//! collects them in a fixed order and serializes to JSON or CSV.

use std::io;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerificationRecord {
    pub suite: String,
    pub check: String,
    /// Parameters of the check, e.g. `spins=[1,2] sectors=[1,1]`.
    pub config: String,
    /// Finite-difference step or quadrature resolution, when one applies.
    pub step: Option<f64>,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl VerificationRecord {
    /// `pass` is `residual ≤ tolerance`; a non-finite residual fails.
    pub fn new(
        suite: impl Into<String>,
        check: impl Into<String>,
        config: impl Into<String>,
        step: Option<f64>,
        residual: f64,
        tolerance: f64,
    ) -> Self {
        Self {
            suite: suite.into(),
            check: check.into(),
            config: config.into(),
            step,
            residual,
            tolerance,
            pass: residual.is_finite() && residual <= tolerance,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerificationReport {
    pub records: Vec<VerificationRecord>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, record: VerificationRecord) {
        self.records.push(record);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.records.extend(other.records);
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// True iff every record passes. An empty report passes.
    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &VerificationRecord> {
        self.records.iter().filter(|r| !r.pass)
    }

    /// Largest residual of one suite, if it has records.
    pub fn max_residual(&self, suite: &str) -> Option<f64> {
        self.records.iter().filter(|r| r.suite == suite).map(|r| r.residual).reduce(f64::max)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Schema(format!("line {}, column {}: {e}", e.line(), e.column())))
    }

    /// CSV with columns `suite,check,config,step,residual,tolerance,pass`.
    pub fn write_csv<W: io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for r in &self.records {
            w.serialize(r).map_err(|e| Error::Schema(e.to_string()))?;
        }
        w.flush().map_err(|e| Error::Schema(e.to_string()))
    }
}
