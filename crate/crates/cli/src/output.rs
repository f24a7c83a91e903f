use std::collections::BTreeMap;
use std::fmt;
use std::process::ExitCode;

use serde::Serialize;
use serde_json::Value;

/// One command's output. Apart from `elapsed_ms` it is a pure function of
/// the command line.
#[derive(Debug, Serialize)]
pub struct CommandResult {
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub result: Value,
    pub cross_check: Option<Value>,
    pub elapsed_ms: u64,
}

/// What a command produced before timing is attached.
pub struct Report {
    pub inputs: BTreeMap<String, Value>,
    pub result: Value,
    pub cross_check: Option<Value>,
    /// `false` when a verification step failed; the payload is still printed.
    pub verified: bool,
}

impl Report {
    pub fn new(result: Value) -> Self {
        Self {
            inputs: BTreeMap::new(),
            result,
            cross_check: None,
            verified: true,
        }
    }

    pub fn input(mut self, key: &str, value: impl Serialize) -> Self {
        self.inputs.insert(key.to_string(), to_value(value));
        self
    }
}

pub fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("serializable payload")
}

#[derive(Debug)]
pub enum CliError {
    /// Malformed input: exit 2.
    Input(String),
    /// Well-formed input that violates a precondition: exit 3.
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Input(_) => ExitCode::from(2),
            CliError::Domain(_) => ExitCode::from(3),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Domain(m) => write!(f, "domain error: {m}"),
        }
    }
}

fn render_value(out: &mut String, indent: usize, key: &str, v: &Value) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for (k, x) in map {
                render_value(out, indent + 1, k, x);
            }
        }
        Value::Array(items) if items.iter().any(|x| x.is_object()) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for (i, x) in items.iter().enumerate() {
                render_value(out, indent + 1, &format!("[{i}]"), x);
            }
        }
        Value::String(s) => out.push_str(&format!("{pad}{key}: {s}\n")),
        other => out.push_str(&format!("{pad}{key}: {other}\n")),
    }
}

/// Indented `key: value` text.
pub fn render_human(r: &CommandResult) -> String {
    let mut out = format!("{}\n", r.command);
    if !r.inputs.is_empty() {
        render_value(&mut out, 0, "inputs", &to_value(&r.inputs));
    }
    render_value(&mut out, 0, "result", &r.result);
    if let Some(c) = &r.cross_check {
        render_value(&mut out, 0, "cross_check", c);
    }
    out.push_str(&format!("elapsed_ms: {}\n", r.elapsed_ms));
    out
}
