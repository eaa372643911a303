//! Batch plumbing shared by the command-line front end and the acceptance
//! tests: run reports, the acceptance suite, the graph corpus and the
//! succinctness survey.

mod acceptance;
mod corpus;

pub use acceptance::{run_acceptance, run_criterion, CriterionOutcome, CRITERIA};
pub use corpus::{corpus_build, succinctness_survey, CorpusManifest, OrderCount, SuccinctnessReport};

use serde::Serialize;
use serde_json::Value;

/// Version of every JSON document written by the harness.
pub const SCHEMA: u32 = 1;

/// One named pass/fail check inside a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool) -> Check {
        Check {
            name: name.into(),
            passed,
        }
    }
}

/// The record of one command. `parameters` lists every input that affects
/// the result, seeds and caps included, so the report determines a re-run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub command: String,
    pub parameters: Value,
    pub results: Value,
    pub checks: Vec<Check>,
    /// Whether every check passed.
    pub passed: bool,
    pub wall_time_ms: u64,
}

impl RunReport {
    pub fn new(command: impl Into<String>, parameters: Value, results: Value, checks: Vec<Check>) -> RunReport {
        let passed = checks.iter().all(|c| c.passed);
        RunReport {
            schema: SCHEMA,
            command: command.into(),
            parameters,
            results,
            checks,
            passed,
            wall_time_ms: 0,
        }
    }

    pub fn with_wall_time(mut self, ms: u64) -> RunReport {
        self.wall_time_ms = ms;
        self
    }

    /// The report as a JSON value. Keys come out sorted because
    /// `serde_json` maps are ordered.
    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("reports serialize")
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn to_json(&self) -> String {
        to_sorted_json(self)
    }
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_sorted_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("value serializes");
    let mut s = serde_json::to_string_pretty(&v).expect("values print");
    s.push('\n');
    s
}

/// Removes every `wall_time_ms` field, recursively, so that two runs can
/// be compared for equality.
pub fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(m) => {
            m.remove("wall_time_ms");
            m.values_mut().for_each(strip_timing);
        }
        Value::Array(a) => a.iter_mut().for_each(strip_timing),
        _ => {}
    }
}
