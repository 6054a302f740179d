//! Library side of the `circdet` command-line tool.
//!
//! Every subcommand writes to a caller-supplied sink and returns its exit
//! code, so the binary is a thin wrapper and tests can drive commands
//! in-process.

pub mod args;
pub mod bench;
pub mod report;
pub mod verify;
pub mod zlit;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

pub use args::{Cli, Command, Format};

/// All checks passed, or all computed methods agree.
pub const EXIT_OK: i32 = 0;
/// Bad arguments or a request that cannot be served.
pub const EXIT_USAGE: i32 = 1;
/// A disagreement between methods or a failed check.
pub const EXIT_FAILURE: i32 = 2;

pub const DEFAULT_RTOL: f64 = 1e-6;
pub const RTOL_ENV: &str = "CIRCDET_RTOL";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type CliResult<T> = std::result::Result<T, CliError>;

pub(crate) fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// `--rtol` if given, else `CIRCDET_RTOL`, else [`DEFAULT_RTOL`].
pub fn resolve_rtol(flag: Option<f64>) -> CliResult<f64> {
    let value = match flag {
        Some(v) => v,
        None => match std::env::var(RTOL_ENV) {
            Ok(text) => text
                .trim()
                .parse::<f64>()
                .map_err(|_| usage(format!("{RTOL_ENV}='{text}' is not a number")))?,
            Err(std::env::VarError::NotPresent) => DEFAULT_RTOL,
            Err(e) => return Err(usage(format!("{RTOL_ENV}: {e}"))),
        },
    };
    if !value.is_finite() || value < 0.0 {
        return Err(usage(format!(
            "tolerance must be finite and non-negative, got {value}"
        )));
    }
    Ok(value)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = out.write_all(text.as_bytes());
            } else {
                let _ = err.write_all(text.as_bytes());
            }
            return code;
        }
    };
    let result = match cli.command {
        Command::Det(a) => report::cmd_det(&a, out, err),
        Command::Table(a) => report::cmd_table(&a, out),
        Command::Verify(a) => verify::cmd_verify(&a, &verify::library_closed_form, out),
        Command::Bench(a) => bench::cmd_bench(&a, out, err),
    };
    match result {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILURE
        }
    }
}
