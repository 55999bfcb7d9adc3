//! Machine-readable run record written next to every command's outputs.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;

use crate::csvio::write_atomic;
use crate::CliError;

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub version: String,
    pub wall_time_s: f64,
    pub config: BTreeMap<String, String>,
    pub outputs: Vec<String>,
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckEntry>,
}

#[derive(Debug, Serialize)]
pub struct CheckEntry {
    pub id: String,
    pub name: String,
    pub passed: bool,
    pub seconds: f64,
    pub budget_seconds: f64,
    pub detail: String,
}

impl From<&circlat::checks::CheckReport> for CheckEntry {
    fn from(r: &circlat::checks::CheckReport) -> Self {
        CheckEntry {
            id: r.id.to_string(),
            name: r.name.to_string(),
            passed: r.passed,
            seconds: r.seconds,
            budget_seconds: r.budget_seconds,
            detail: r.detail.clone(),
        }
    }
}

impl RunManifest {
    pub fn new(command: &str, config: BTreeMap<String, String>) -> Self {
        RunManifest {
            command: command.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            wall_time_s: 0.0,
            config,
            outputs: Vec::new(),
            warnings: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        let bytes = serde_json::to_vec_pretty(self)
            .map_err(|e| CliError::Io(format!("manifest serialization: {e}")))?;
        write_atomic(path, &bytes)
    }
}
