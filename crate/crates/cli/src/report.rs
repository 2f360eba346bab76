//! Report envelope, failure taxonomy and output formats.

use serde::Serialize;
use serde_json::Value;

use flagdl_core::Error;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    /// Skipped inside `all` because a hypothesis does not apply.
    Skipped,
    MathFailure,
    Precondition,
    Budget,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass | Status::Skipped => 0,
            Status::MathFailure => 1,
            Status::Precondition => 2,
            Status::Budget => 3,
        }
    }

    pub fn from_error(e: &Error) -> Status {
        match e {
            Error::Precondition(_) | Error::Invalid(_) => Status::Precondition,
            Error::Budget { .. } => Status::Budget,
            Error::Verification(_) => Status::MathFailure,
        }
    }

    pub fn from_verdict(passed: bool) -> Status {
        if passed {
            Status::Pass
        } else {
            Status::MathFailure
        }
    }
}

/// What a subcommand produced: a verdict, structured data and optional CSV.
pub struct Outcome {
    pub status: Status,
    pub data: Value,
    pub csv: Option<String>,
}

impl Outcome {
    pub fn new(passed: bool, data: Value) -> Self {
        Outcome { status: Status::from_verdict(passed), data, csv: None }
    }

    pub fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }

    pub fn from_error(e: &Error) -> Self {
        Outcome {
            status: Status::from_error(e),
            data: serde_json::json!({ "error": e.to_string() }),
            csv: None,
        }
    }
}

#[derive(Serialize)]
pub struct Report<'a> {
    pub schema_version: u32,
    pub command: &'a str,
    pub spec: String,
    pub seed: u64,
    pub budget: String,
    pub status: Status,
    pub result: &'a Value,
}

/// Quotes a CSV field when needed.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn csv_line(fields: &[String]) -> String {
    let mut line = fields.iter().map(|f| csv_field(f)).collect::<Vec<_>>().join(",");
    line.push('\n');
    line
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_taxonomy() {
        assert_eq!(Status::from_error(&Error::Precondition("x".into())).exit_code(), 2);
        assert_eq!(Status::from_error(&Error::Invalid("x".into())).exit_code(), 2);
        let budget = Error::Budget { what: "G".into(), needed: 10, budget: 1 };
        assert_eq!(Status::from_error(&budget).exit_code(), 3);
        assert_eq!(Status::from_error(&Error::Verification("x".into())).exit_code(), 1);
        assert_eq!(Status::from_verdict(true).exit_code(), 0);
        assert_eq!(Status::Skipped.exit_code(), 0);
        assert!(Status::Budget > Status::MathFailure && Status::MathFailure > Status::Pass);
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_field("plain"), "plain");
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
        assert_eq!(csv_line(&["1".into(), "x,y".into()]), "1,\"x,y\"\n");
    }
}
