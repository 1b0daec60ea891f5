//! The JSON envelope every command prints.

use std::time::Duration;

use rackalg::Error;
use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ASSERTION: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

/// What a command hands back: whether its assertions held, and the body.
pub struct Outcome {
    pub ok: bool,
    pub result: Value,
}

impl Outcome {
    pub fn new(ok: bool, result: impl Serialize) -> Outcome {
        Outcome { ok, result: serde_json::to_value(result).expect("reports serialize") }
    }

    pub fn info(result: impl Serialize) -> Outcome {
        Outcome::new(true, result)
    }
}

#[derive(Serialize)]
struct ErrorBody {
    kind: &'static str,
    message: String,
}

#[derive(Serialize)]
pub struct Report {
    schema_version: u32,
    tool: &'static str,
    version: &'static str,
    command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<ErrorBody>,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<u128>,
}

/// Errors that mean "the mathematics said no" rather than "bad input".
fn is_assertion(e: &Error) -> bool {
    matches!(
        e,
        Error::NotBijective(_)
            | Error::NotSelfDistributive(..)
            | Error::ZeroEntry(..)
            | Error::CocycleLawFails(..)
            | Error::NonzeroCheckFailed(_)
            | Error::ConditionViolated { .. }
            | Error::NotModuleAlgebra(_)
    )
}

pub fn exit_code_for(e: &Error) -> i32 {
    if e.is_resource() {
        EXIT_RESOURCE
    } else if is_assertion(e) {
        EXIT_ASSERTION
    } else {
        EXIT_INVALID
    }
}

fn error_kind(code: i32) -> &'static str {
    match code {
        EXIT_ASSERTION => "assertion",
        EXIT_RESOURCE => "resource",
        _ => "invalid_input",
    }
}

impl Report {
    pub fn build(command: String, seed: Option<u64>, outcome: Result<Outcome, Error>, elapsed: Option<Duration>) -> (Report, i32) {
        let base = |status, result, error| Report {
            schema_version: SCHEMA_VERSION,
            tool: "rackalg",
            version: env!("CARGO_PKG_VERSION"),
            command: command.clone(),
            seed,
            status,
            result,
            error,
            elapsed_ms: elapsed.map(|d| d.as_millis()),
        };
        match outcome {
            Ok(o) if o.ok => (base("pass", Some(o.result), None), EXIT_OK),
            Ok(o) => (base("fail", Some(o.result), None), EXIT_ASSERTION),
            Err(e) => {
                let code = exit_code_for(&e);
                let body = ErrorBody { kind: error_kind(code), message: e.to_string() };
                (base(if code == EXIT_ASSERTION { "fail" } else { "error" }, None, Some(body)), code)
            }
        }
    }

    /// Invalid command-line input caught before any computation.
    pub fn usage(command: String, message: String) -> (Report, i32) {
        Report::build(command, None, Err(Error::Invalid(message)), None)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}
