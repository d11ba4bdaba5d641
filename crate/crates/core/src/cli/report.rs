//! Structured command results and their text and JSON renderings.

use serde::Serialize;
use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "nilrigid-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Refuted,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Refuted => 1,
            Status::Error => 2,
        }
    }
}

/// The result of one command. JSON objects use sorted keys, so equal
/// reports serialize to identical bytes.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub inputs: Map<String, Value>,
    pub outputs: Map<String, Value>,
    pub witness: Option<Value>,
    /// Human-readable lines for `--format text`.
    pub text: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Report {
        Report {
            command: command.to_string(),
            status: Status::Ok,
            inputs: Map::new(),
            outputs: Map::new(),
            witness: None,
            text: Vec::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.inputs.insert(key.into(), to_value(value));
        self
    }

    pub fn output(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.outputs.insert(key.into(), to_value(value));
        self
    }

    pub fn line(&mut self, text: impl Into<String>) -> &mut Self {
        self.text.push(text.into());
        self
    }

    /// Marks the report as a refutation carrying `witness`.
    pub fn refute(&mut self, witness: impl Serialize) -> &mut Self {
        self.status = Status::Refuted;
        self.witness = Some(to_value(witness));
        self
    }

    pub fn error(command: &str, message: &str) -> Report {
        let mut r = Report::new(command);
        r.status = Status::Error;
        r.output("message", message);
        r.line(format!("error: {message}"));
        r
    }

    pub fn to_json_value(&self) -> Value {
        json!({
            "schema": SCHEMA,
            "command": self.command,
            "status": self.status,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "witness": self.witness,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json_value()).expect("values serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = self.text.join("\n");
        if !s.is_empty() {
            s.push('\n');
        }
        s
    }
}

fn to_value(value: impl Serialize) -> Value {
    serde_json::to_value(value).expect("report values serialize")
}
