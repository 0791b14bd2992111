//! Command-line front-end for the routing library: file formats, run
//! reports, and the five subcommands (`detect`, `solve`, `verify`,
//! `generate`, `sweep`).

pub mod commands;
pub mod formats;
pub mod logging;
pub mod report;

/// An error surfaced to the user. `code` becomes the process exit code:
/// 1 for domain failures (infeasible problems, failed audits), 2 for
/// unreadable or unparseable input.
#[derive(Debug)]
pub struct CliError {
    pub message: String,
    pub code: u8,
}

impl CliError {
    pub fn domain(message: impl Into<String>) -> Self {
        CliError { message: message.into(), code: 1 }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        CliError { message: message.into(), code: 2 }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<symlife_core::Error> for CliError {
    fn from(e: symlife_core::Error) -> Self {
        CliError::domain(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
