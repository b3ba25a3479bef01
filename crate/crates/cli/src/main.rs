//! Command-line front end: parses a flat key-value configuration (flags
//! and/or a `key = value` file, flags winning), dispatches to the analysis
//! modules, and writes deterministic CSV curve data.
//!
//! Exit codes: 0 success, 1 configuration validation error, 2 numeric or
//! data error, 3 search-space overflow.

use std::process::ExitCode;

mod channel_file;
mod commands;
mod config;
mod csv;

/// Failure modes mapped to process exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Bad or missing configuration (exit 1).
    Validation(String),
    /// Domain, structural, data, or estimation failure (exit 2).
    Numeric(String),
    /// Exhaustive search too large (exit 3).
    SearchSpace(String),
}

impl From<relay_secrecy::Error> for CliError {
    fn from(e: relay_secrecy::Error) -> Self {
        match e {
            relay_secrecy::Error::SearchSpace { .. } => CliError::SearchSpace(e.to_string()),
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match commands::run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Numeric(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::SearchSpace(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
