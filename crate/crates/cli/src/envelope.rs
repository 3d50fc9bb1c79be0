use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const TOOL_VERSION: &str = concat!("pbosc ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Residual {
    pub name: String,
    #[serde(with = "non_finite_as_null")]
    pub value: f64,
    pub tolerance: f64,
}

/// JSON has no infinities; an unbounded residual is written as `null`.
mod non_finite_as_null {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else {
            s.serialize_none()
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::INFINITY))
    }
}

impl Residual {
    pub fn passed(&self) -> bool {
        self.value.is_finite() && self.value <= self.tolerance
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportEnvelope {
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub results: Value,
    pub residuals: Vec<Residual>,
    pub pass: bool,
    pub tool_version: String,
}

impl ReportEnvelope {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.into(),
            parameters: BTreeMap::new(),
            results: Value::Null,
            residuals: Vec::new(),
            pass: true,
            tool_version: TOOL_VERSION.into(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) {
        self.parameters.insert(key.into(), value.into());
    }

    pub fn residual(&mut self, name: impl Into<String>, value: f64, tolerance: f64) {
        self.residuals.push(Residual {
            name: name.into(),
            value,
            tolerance,
        });
        self.pass = self.recomputed_pass();
    }

    /// Forces a failing entry for outcomes that have no natural residual.
    pub fn fail(&mut self, name: impl Into<String>) {
        self.residual(name, f64::INFINITY, 0.0);
    }

    pub fn recomputed_pass(&self) -> bool {
        self.residuals.iter().all(Residual::passed)
    }

    /// `true` when the stored flag agrees with the stored residuals.
    pub fn reverify(&self) -> bool {
        self.pass == self.recomputed_pass()
    }

    pub fn summary(&self) -> String {
        let failed = self.residuals.iter().filter(|r| !r.passed()).count();
        format!(
            "{}: pass={} ({} residuals, {failed} failed)",
            self.command,
            self.pass,
            self.residuals.len()
        )
    }
}
