use cuspidal_core::Error;
use serde_json::{json, Value};

pub const SCHEMA: &str = "cuspidal-lab/1";

/// Exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const USAGE: i32 = 2;
    pub const DOMAIN: i32 = 3;
    pub const INVARIANT: i32 = 4;
    pub const BAD_EPS: i32 = 5;
    pub const BAD_PRIME: i32 = 6;
}

#[derive(Debug)]
pub struct CliError {
    pub kind: &'static str,
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError { kind: "usage", code: exit::USAGE, message: message.into() }
    }

    pub fn bad_eps(message: impl Into<String>) -> Self {
        CliError { kind: "bad_eps", code: exit::BAD_EPS, message: message.into() }
    }

    /// Single-line JSON for stderr.
    pub fn to_line(&self) -> String {
        json!({"schema": SCHEMA, "error": self.kind, "exit_code": self.code, "message": self.message}).to_string()
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        let (kind, code) = match &err {
            Error::AllPlusSquarefree(_) => ("excluded_case", exit::DOMAIN),
            Error::SignLength { .. } => ("bad_eps", exit::BAD_EPS),
            Error::EvenPrime | Error::NotPrime(_) => ("bad_prime", exit::BAD_PRIME),
            Error::ZeroLevel => ("usage", exit::USAGE),
            Error::NotADivisor { .. }
            | Error::PrimeDividesLevel { .. }
            | Error::PrimeDoesNotDivideLevel { .. }
            | Error::NotExactDivisor { .. }
            | Error::AtkinLehnerIndex { .. }
            | Error::NotSquarefree(_)
            | Error::Squarefree(_) => ("domain", exit::DOMAIN),
            Error::DimensionMismatch { .. } | Error::ZeroDivisor | Error::InsufficientTruncation { .. } => {
                ("internal", exit::INVARIANT)
            }
        };
        CliError { kind, code, message: err.to_string() }
    }
}

/// A flat table for `--tsv`.
#[derive(Debug, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut out = self.header.join("\t");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join("\t"));
            out.push('\n');
        }
        out
    }
}

/// What a subcommand produced: both renderings, plus the exit code
/// (nonzero when an internal check failed).
pub struct Report {
    pub json: Value,
    pub table: Table,
    pub code: i32,
}

impl Report {
    pub fn ok(json: Value, table: Table) -> Self {
        Report { json, table, code: exit::OK }
    }
}
