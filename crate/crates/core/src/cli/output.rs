//! Reports and witness files.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::schema::{MorLit, SCHEMA_VERSION};
use crate::error::Error;
use crate::report::ValidationReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Infeasible,
    Error,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub status: Status,
    pub details: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckRecord {
    pub fn new(id: impl Into<String>, status: Status, details: Value) -> CheckRecord {
        CheckRecord { id: id.into(), status, details, witness: None }
    }

    pub fn from_report(id: impl Into<String>, r: &ValidationReport) -> CheckRecord {
        let status = if r.passed() { Status::Pass } else { Status::Fail };
        CheckRecord::new(id, status, to_value(r))
    }

    pub fn error(id: impl Into<String>, e: &Error) -> CheckRecord {
        CheckRecord::new(id, Status::Error, serde_json::json!({ "error": e.to_string() }))
    }

    pub fn with_witness(mut self, file: impl Into<String>) -> CheckRecord {
        self.witness = Some(file.into());
        self
    }
}

pub(crate) fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub seed: u64,
    pub samples: usize,
    pub checks: Vec<CheckRecord>,
}

impl Report {
    pub fn new(command: impl Into<String>, seed: u64, samples: usize, checks: Vec<CheckRecord>) -> Report {
        Report { schema_version: SCHEMA_VERSION, command: command.into(), seed, samples, checks }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    /// 0 when every check passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessKind {
    Functor,
    Monad,
}

/// The on-disk wrapper of every witness file.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WitnessEnvelope {
    pub schema_version: u32,
    pub kind: WitnessKind,
    pub subject: String,
    pub data: Value,
}

impl WitnessEnvelope {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("witness serializes");
        s.push('\n');
        s
    }
}

/// A section `σ_x: M x → M² x` per base object.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SigmaFile {
    pub monad: String,
    pub field: String,
    pub components: Vec<SigmaComponent>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SigmaComponent {
    pub object: String,
    pub matrix: MorLit,
}

/// `<name>.witness.json` with characters outside `[A-Za-z0-9_.-]` replaced.
pub fn witness_file_name(subject: &str) -> String {
    let safe: String = subject
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || "_.-".contains(c) { c } else { '_' })
        .collect();
    format!("{safe}.witness.json")
}
