//! Deterministic reports: one structured value per input, rendered as JSON
//! or as indented text. Object keys are sorted, so identical inputs and seed
//! give byte-identical output.

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

/// Radical bases and pair lists longer than this are reported by size only.
pub const LIST_LIMIT: usize = 200;

/// Ordered by severity of the exit code it maps to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    InputError,
    Mismatch,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Mismatch => 1,
            Status::InputError => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Mismatch => "mismatch",
            Status::InputError => "input error",
        }
    }
}

/// Outcome for one input file.
#[derive(Clone, Debug)]
pub struct Section {
    pub label: String,
    pub digest: Option<String>,
    pub status: Status,
    pub value: Value,
}

impl Section {
    pub fn input_error(label: &str, digest: Option<String>, message: impl Into<String>) -> Self {
        Section {
            label: label.to_string(),
            digest,
            status: Status::InputError,
            value: json!({ "error": message.into() }),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub sections: Vec<Section>,
    pub warnings: Vec<String>,
    /// Cross-input results, such as a pass/fail matrix.
    pub summary: Option<Value>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

/// A list, or its length once it exceeds [`LIST_LIMIT`].
pub fn bounded_list(items: Vec<Value>) -> Value {
    if items.len() > LIST_LIMIT {
        json!({ "summarized": true, "count": items.len() })
    } else {
        Value::Array(items)
    }
}

impl Report {
    pub fn status(&self) -> Status {
        self.sections
            .iter()
            .map(|s| s.status)
            .max()
            .unwrap_or(Status::Pass)
    }

    pub fn exit_code(&self) -> u8 {
        self.status().exit_code()
    }

    pub fn to_json(&self) -> Value {
        let inputs: Vec<Value> = self
            .sections
            .iter()
            .map(|s| {
                let mut m = Map::new();
                m.insert("path".into(), json!(s.label));
                m.insert("sha256".into(), json!(s.digest));
                m.insert("status".into(), json!(s.status.name()));
                m.insert("results".into(), s.value.clone());
                Value::Object(m)
            })
            .collect();
        json!({
            "command": self.command,
            "seed": self.seed,
            "status": self.status().name(),
            "exit_code": self.exit_code(),
            "warnings": self.warnings,
            "inputs": inputs,
            "summary": self.summary,
        })
    }

    pub fn structured(&self) -> String {
        let mut out = serde_json::to_string_pretty(&self.to_json()).expect("values serialize");
        out.push('\n');
        out
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        out.push_str(&format!("seed: {}\n", self.seed));
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        for s in &self.sections {
            out.push_str(&format!(
                "\n== {} [{}]\nsha256: {}\n",
                s.label,
                s.status.name(),
                s.digest.as_deref().unwrap_or("-")
            ));
            render(&mut out, &s.value, 0);
        }
        if let Some(summary) = &self.summary {
            out.push_str("\n== summary\n");
            render(&mut out, summary, 0);
        }
        out.push_str(&format!(
            "\nstatus: {} (exit {})\n",
            self.status().name(),
            self.exit_code()
        ));
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) => {
            let parts: Option<Vec<String>> = items.iter().map(scalar).collect();
            parts.map(|p| format!("[{}]", p.join(", ")))
        }
        Value::Object(_) => None,
    }
}

fn render(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(out, x, depth + 1);
                    }
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render(out, x, depth + 1);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}
