use std::path::Path;
use std::process::ExitCode;

use serde_json::{json, Map, Value};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub struct Outcome {
    pub passed: bool,
    pub report: Value,
    pub text: String,
}

impl Outcome {
    pub fn new(command: &str, passed: bool, fields: Value, text: String) -> Self {
        let mut report = Map::new();
        report.insert("version".into(), json!(VERSION));
        report.insert("command".into(), json!(command));
        report.insert("passed".into(), json!(passed));
        if let Value::Object(m) = fields {
            report.extend(m);
        }
        Outcome {
            passed,
            report: Value::Object(report),
            text,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failure(String),
}

impl From<yr_core::Error> for CliError {
    fn from(e: yr_core::Error) -> Self {
        use yr_core::Error::*;
        match e {
            InvalidSignature { .. }
            | DimensionMismatch(_)
            | NotDominant(_)
            | OneDimRequiresPositiveL
            | InvalidTwistPairing { .. }
            | Parse(_)
            | InvalidArgument(_)
            | WrongModuleKind(_) => CliError::Usage(e.to_string()),
            _ => CliError::Failure(e.to_string()),
        }
    }
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn write_report(report: &Value, json: bool, text: &str, out: Option<&Path>) -> Result<(), String> {
    let rendered = serde_json::to_string_pretty(report).map_err(|e| e.to_string())?;
    if json {
        println!("{rendered}");
    } else if !text.is_empty() {
        println!("{text}");
    }
    if let Some(path) = out {
        std::fs::write(path, format!("{rendered}\n")).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    Ok(())
}

pub fn emit(outcome: Result<Outcome, CliError>, json: bool, out: Option<&Path>) -> ExitCode {
    let (code, report, text) = match outcome {
        Ok(o) => (u8::from(!o.passed), o.report, o.text),
        Err(e) => {
            let (code, kind, msg) = match e {
                CliError::Usage(m) => (2, "usage", m),
                CliError::Failure(m) => (1, "failure", m),
            };
            eprintln!("error: {msg}");
            let report = json!({ "version": VERSION, "passed": false, "error": { "kind": kind, "message": msg } });
            (code, report, String::new())
        }
    };
    if let Err(e) = write_report(&report, json, &text, out) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}

pub fn pass_fail(passed: bool) -> &'static str {
    if passed {
        "pass"
    } else {
        "FAIL"
    }
}
