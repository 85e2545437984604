//! Command-line front end for the exceptional-point verifier.
//!
//! Exit codes: 0 success, 2 a hypothesis or oracle check failed,
//! 3 ambiguous at the precision ceiling, 4 usage or IO error,
//! 5 a lattice size guard or cap was hit.

pub mod commands;
pub mod config;
pub mod output;

use std::ffi::OsString;
use std::fmt;
use std::io::Write;

use clap::Parser;
use exceptional_core::Error;

pub use commands::{read_certificate, EXIT_AMBIGUOUS, EXIT_FAILED, EXIT_OK};
pub use config::Cli;
pub use output::CertificateRecord;

pub const EXIT_USAGE: i32 = 4;
pub const EXIT_SIZE: i32 = 5;

/// Anything that stops a command before it produces a verdict.
#[derive(Debug)]
pub enum Failure {
    Usage(config::UsageError),
    Core(Error),
    Io(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Core(Error::SizeCapExceeded { .. } | Error::LatticeGuard { .. }) => EXIT_SIZE,
            _ => EXIT_USAGE,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(e) => write!(f, "{e}"),
            Failure::Core(e @ Error::SizeCapExceeded { partial, .. }) => {
                write!(f, "{e}\npartial count: {partial}")
            }
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl From<config::UsageError> for Failure {
    fn from(e: config::UsageError) -> Self {
        Failure::Usage(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

/// Runs the CLI with explicit streams and returns the exit code.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = stdout.write_all(text.as_bytes());
            } else {
                let _ = stderr.write_all(text.as_bytes());
            }
            return code;
        }
    };
    let result = config::resolve(&cli)
        .map_err(Failure::from)
        .and_then(|rc| {
            let out = commands::execute(&cli, &rc)?;
            commands::emit(&out.body, &rc, stdout)?;
            Ok(out.code)
        });
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

/// Runs the CLI on the process streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
