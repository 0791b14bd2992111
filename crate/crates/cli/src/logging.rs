//! Progress logging to stderr, gated by the `SYMLIFE_LOG` environment
//! variable (`quiet`, `info`, or `debug`; default `info`). Command
//! results go to stdout and are never gated.

use std::sync::OnceLock;

use crate::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum LogLevel {
    Quiet,
    Info,
    Debug,
}

static LEVEL: OnceLock<LogLevel> = OnceLock::new();

/// Read `SYMLIFE_LOG` once; an unknown value is a usage error.
pub fn init_from_env() -> CliResult<LogLevel> {
    let level = match std::env::var("SYMLIFE_LOG") {
        Err(_) => LogLevel::Info,
        Ok(v) => match v.as_str() {
            "quiet" => LogLevel::Quiet,
            "info" => LogLevel::Info,
            "debug" => LogLevel::Debug,
            other => {
                return Err(CliError::usage(format!(
                    "invalid SYMLIFE_LOG value {other:?} (expected quiet, info, or debug)"
                )))
            }
        },
    };
    let _ = LEVEL.set(level);
    Ok(level)
}

pub fn level() -> LogLevel {
    LEVEL.get().copied().unwrap_or(LogLevel::Info)
}

pub fn info(msg: impl AsRef<str>) {
    if level() >= LogLevel::Info {
        eprintln!("info: {}", msg.as_ref());
    }
}

pub fn debug(msg: impl AsRef<str>) {
    if level() >= LogLevel::Debug {
        eprintln!("debug: {}", msg.as_ref());
    }
}
