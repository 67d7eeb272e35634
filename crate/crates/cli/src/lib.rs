//! Command-line front end: argument parsing, dispatch to the verification
//! engine, and json/csv/text rendering.
//!
//! Exit codes: 0 when every check passed, 1 when at least one check failed,
//! 2 on usage, parse or I/O errors.

pub mod args;
pub mod commands;
pub mod render;
pub mod rows;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;
use probident_core::identities::IdentityError;
use probident_core::montecarlo::MonteCarloError;
use thiserror::Error;

use args::{Cli, Command};
use commands::Outcome;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "MIL_THREADS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Parse(String),
    #[error("could not write {path}: {reason}")]
    Output { path: String, reason: String },
    #[error("rendering failed: {0}")]
    Render(String),
    #[error(transparent)]
    Identity(#[from] IdentityError),
    #[error(transparent)]
    MonteCarlo(#[from] MonteCarloError),
}

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Verify(a) => commands::verify_cmd(a),
        Command::Sweep(a) => commands::sweep_cmd(a),
        Command::Sample(a) => commands::sample_cmd(a),
        Command::Series(a) => commands::series_cmd(a),
        Command::Density(a) => commands::density_cmd(a),
        Command::Report(a) => commands::report_cmd(a),
    }
}

fn thread_cap(err: &mut dyn Write) -> Option<usize> {
    let raw = std::env::var(THREADS_ENV).ok()?;
    match raw.trim().parse::<usize>() {
        Ok(n) if n > 0 => Some(n),
        _ => {
            let _ = writeln!(err, "warning: ignoring {THREADS_ENV}={raw:?}; expected a positive integer");
            None
        }
    }
}

fn execute(cli: &Cli, err: &mut dyn Write) -> Result<Outcome, CliError> {
    match thread_cap(err) {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Usage(e.to_string()))?
            .install(|| dispatch(cli)),
        None => dispatch(cli),
    }
}

/// Runs the command line `argv` (including the program name), writing the
/// rendered result to `out` or `--output`, and diagnostics to `err`.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_PASS
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };

    let result = execute(&cli, err).and_then(|outcome| {
        let text = render::render(&outcome.document, cli.format)?;
        match &cli.output {
            Some(path) => std::fs::write(path, text).map_err(|e| CliError::Output {
                path: path.display().to_string(),
                reason: e.to_string(),
            })?,
            None => out.write_all(text.as_bytes()).map_err(|e| CliError::Output {
                path: "standard output".to_string(),
                reason: e.to_string(),
            })?,
        }
        Ok(outcome.passed)
    });

    match result {
        Ok(true) => EXIT_PASS,
        Ok(false) => EXIT_CHECK_FAILED,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

/// [`run_with`] on the process's standard streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}
