//! `cuspidal-lab`: JSON/TSV tables for cusps, cuspidal divisors, Eisenstein
//! series and Eisenstein ideal indices on X0(N).
//!
//! Exit codes: 0 ok, 2 usage, 3 domain error, 4 internal invariant
//! violation, 5 malformed sign vector, 6 invalid prime.

mod args;
mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::Cli;
use output::CliError;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) if matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = err.print();
            return ExitCode::SUCCESS;
        }
        Err(err) => {
            let first_line = err.to_string().lines().next().unwrap_or_default().trim_start_matches("error: ").to_string();
            return fail(&CliError::usage(first_line));
        }
    };

    match commands::run(&cli.command) {
        Ok(report) => {
            let text = if cli.tsv {
                report.table.render()
            } else {
                format!("{}\n", report.json)
            };
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).is_err() {
                return ExitCode::from(1);
            }
            if report.code != output::exit::OK {
                eprintln!("{}", CliError { kind: "invariant_violation", code: report.code, message: "internal check failed".into() }.to_line());
            }
            ExitCode::from(report.code as u8)
        }
        Err(err) => fail(&err),
    }
}

fn fail(err: &CliError) -> ExitCode {
    eprintln!("{}", err.to_line());
    ExitCode::from(err.code as u8)
}
