//! Command results: one ordered record per invocation, rendered as JSON or
//! as `name: value` lines using the same names.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub results: Map<String, Value>,
    pub version: String,
}

impl OutputRecord {
    pub fn new(command: &str) -> Self {
        OutputRecord {
            command: command.to_string(),
            inputs: Map::new(),
            results: Map::new(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) {
        self.inputs.insert(key.to_string(), value.into());
    }

    pub fn result(&mut self, key: &str, value: impl Into<Value>) {
        self.results.insert(key.to_string(), value.into());
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("records contain only JSON values")
    }

    /// One line per leaf; nested names are joined with `.` and array
    /// elements that are objects get `[i]`. Arrays of scalars stay inline.
    pub fn to_text(&self) -> String {
        let mut lines = vec![format!("command: {}", self.command)];
        for (prefix, map) in [("inputs", &self.inputs), ("results", &self.results)] {
            for (k, v) in map {
                flatten(&format!("{prefix}.{k}"), v, &mut lines);
            }
        }
        lines.push(format!("version: {}", self.version));
        lines.join("\n")
    }
}

fn flatten(name: &str, v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Object(map) => {
            for (k, inner) in map {
                flatten(&format!("{name}.{k}"), inner, out);
            }
        }
        Value::Array(items) if items.iter().any(Value::is_object) => {
            for (i, inner) in items.iter().enumerate() {
                flatten(&format!("{name}[{i}]"), inner, out);
            }
        }
        Value::String(s) => out.push(format!("{name}: {s}")),
        other => out.push(format!("{name}: {other}")),
    }
}
