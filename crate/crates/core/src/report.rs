//! Serializable check reports.
//!
//! Every numerical or combinatorial check produces a [`CheckReport`]. Field
//! order is fixed by the struct definition and all maps inside `parameters`,
//! `witness` and `details` are `serde_json::Value` objects (sorted keys), so
//! identical inputs serialize to identical bytes.

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    /// Machine name of the check, e.g. `brane_exactness`.
    pub check: String,
    /// The mathematical statement the check exercises.
    pub claim: String,
    pub parameters: Value,
    pub max_deviation: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Value>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub details: Option<Value>,
}

impl CheckReport {
    pub fn new(check: impl Into<String>, claim: impl Into<String>, parameters: Value) -> Self {
        Self {
            check: check.into(),
            claim: claim.into(),
            parameters,
            max_deviation: None,
            witness: None,
            pass: true,
            details: None,
        }
    }

    pub fn with_deviation(mut self, max_deviation: f64) -> Self {
        self.max_deviation = Some(max_deviation);
        self
    }

    pub fn with_witness(mut self, witness: Value) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn with_details(mut self, details: Value) -> Self {
        self.details = Some(details);
        self
    }

    pub fn with_pass(mut self, pass: bool) -> Self {
        self.pass = pass;
        self
    }

    /// One-line human summary with the scalar parameters of the check.
    pub fn summary(&self) -> String {
        let status = if self.pass { "PASS" } else { "FAIL" };
        let mut line = format!("[{status}] {}", self.check);
        if let Value::Object(map) = &self.parameters {
            for (key, value) in map.iter().filter(|(_, v)| !v.is_object()) {
                line.push_str(&format!(" {key}={value}"));
            }
        }
        if let Some(dev) = self.max_deviation {
            line.push_str(&format!(" max_deviation={dev:.3e}"));
        }
        line
    }
}
