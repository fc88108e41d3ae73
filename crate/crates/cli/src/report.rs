use std::collections::BTreeMap;

use richelot_core::suites::Check;
use serde::Serialize;
use serde_json::Value;

/// Machine-readable outcome of one command. Everything except `timings` is
/// reproducible from the command line alone.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub precision: u32,
    pub tol: f64,
    pub checks: Vec<Check>,
    pub passed: bool,
    pub summary: String,
    pub result: Value,
    pub timings: BTreeMap<String, f64>,
}

impl Report {
    pub fn new(command: &str, seed: u64, precision: u32, tol: f64) -> Self {
        Report {
            command: command.into(),
            seed,
            precision,
            tol,
            checks: Vec::new(),
            passed: true,
            summary: String::new(),
            result: Value::Null,
            timings: BTreeMap::new(),
        }
    }

    pub fn finish(mut self) -> Self {
        self.passed = self.checks.iter().all(|c| c.passed || !c.gating);
        let failed: Vec<&str> =
            self.checks.iter().filter(|c| !c.passed && c.gating).map(|c| c.name.as_str()).collect();
        self.summary = if failed.is_empty() {
            format!("{}: {} checks passed", self.command, self.checks.len())
        } else {
            format!("{}: {} of {} checks failed: {}", self.command, failed.len(), self.checks.len(), failed.join(", "))
        };
        self
    }
}
