//! Machine-readable run reports.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

/// One checked claim.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub claim_id: String,
    pub anchor: String,
    pub status: Status,
    pub details: BTreeMap<String, Value>,
}

impl CheckRecord {
    pub fn new(claim_id: impl Into<String>, anchor: impl Into<String>, status: Status) -> Self {
        CheckRecord { claim_id: claim_id.into(), anchor: anchor.into(), status, details: BTreeMap::new() }
    }

    pub fn detail(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.details.insert(key.to_string(), value.into());
        self
    }
}

/// A run report. Wall-clock timings live in `timings`, keyed by claim id, so
/// that everything else is reproducible byte for byte.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool_version: String,
    pub command: Vec<String>,
    pub records: Vec<CheckRecord>,
    pub overall: Status,
    pub timings: BTreeMap<String, f64>,
}

impl Report {
    pub fn new(command: Vec<String>) -> Self {
        Report {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command,
            records: Vec::new(),
            overall: Status::Pass,
            timings: BTreeMap::new(),
        }
    }

    pub fn push(&mut self, record: CheckRecord) {
        self.records.push(record);
        self.overall = overall_status(&self.records);
    }

    pub fn time(&mut self, claim_id: &str, seconds: f64) {
        self.timings.insert(claim_id.to_string(), seconds);
    }

    pub fn extend(&mut self, other: Report) {
        for record in other.records {
            self.push(record);
        }
        self.timings.extend(other.timings);
    }

    pub fn record(&self, claim_id: &str) -> Option<&CheckRecord> {
        self.records.iter().find(|r| r.claim_id == claim_id)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| r.status != Status::Pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Any failure makes the run fail; otherwise any inconclusive record makes it
/// inconclusive.
pub fn overall_status(records: &[CheckRecord]) -> Status {
    if records.iter().any(|r| r.status == Status::Fail) {
        Status::Fail
    } else if records.iter().any(|r| r.status == Status::Inconclusive) {
        Status::Inconclusive
    } else {
        Status::Pass
    }
}
