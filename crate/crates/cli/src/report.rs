use serde_json::{json, Value};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    /// A computation with nothing to verify.
    Ok,
    Pass,
    Fail,
    Inconclusive,
    /// Coset enumeration hit its cap; reported, not an error.
    Capped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
            Status::Capped => "capped",
        }
    }

    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok | Status::Pass | Status::Capped => 0,
            Status::Fail => 1,
            Status::Inconclusive => 3,
        }
    }
}

/// A finished run: the JSON payload and its text rendering.
pub struct Report {
    pub inputs: Value,
    pub results: Value,
    pub status: Status,
    pub text: String,
    /// Lines for stderr, printed whatever the format.
    pub stderr: Vec<String>,
}

fn envelope(subcommand: &str, inputs: &Value, results: Value, status: &str) -> Value {
    json!({
        "tool_version": TOOL_VERSION,
        "subcommand": subcommand,
        "inputs": inputs,
        "results": results,
        "status": status,
    })
}

fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializing a Value cannot fail");
    s.push('\n');
    s
}

impl Report {
    pub fn to_json(&self, subcommand: &str) -> String {
        render(&envelope(subcommand, &self.inputs, self.results.clone(), self.status.as_str()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FailureKind {
    /// Bad arguments or unparsable input.
    Usage,
    /// The computation itself stopped with an error.
    Computation,
}

pub struct Failure {
    pub kind: FailureKind,
    pub code: &'static str,
    pub message: String,
    pub inputs: Value,
}

impl Failure {
    pub fn usage(code: &'static str, message: impl Into<String>, inputs: Value) -> Self {
        Failure {
            kind: FailureKind::Usage,
            code,
            message: message.into(),
            inputs,
        }
    }

    pub fn computation(code: &'static str, message: impl Into<String>, inputs: Value) -> Self {
        Failure {
            kind: FailureKind::Computation,
            code,
            message: message.into(),
            inputs,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self.kind {
            FailureKind::Usage => 2,
            FailureKind::Computation => 1,
        }
    }

    pub fn to_json(&self, subcommand: &str) -> String {
        let mut v = envelope(subcommand, &self.inputs, Value::Null, "error");
        v["error"] = json!({ "code": self.code, "message": self.message });
        render(&v)
    }
}
