//! The five subcommands. Each `run` prints its results to stdout, writes
//! artifacts under `--out`, and returns a `CliError` for any failure.

pub mod detect;
pub mod generate;
pub mod solve;
pub mod sweep;
pub mod verify;

use std::path::{Path, PathBuf};
use std::time::Instant;

use symlife_core::{default_eps_sym, eps_feas, NetworkInstance64, EPS_GEO};

use crate::report::Tolerances;

/// Output path `<out dir>/<input stem><suffix>`; the directory defaults
/// to the current one.
pub(crate) fn out_file(out: &Option<PathBuf>, input: &Path, suffix: &str) -> PathBuf {
    let stem = input
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "out".into());
    out.clone().unwrap_or_else(|| PathBuf::from(".")).join(format!("{stem}{suffix}"))
}

pub(crate) fn tolerances(tol: f64, instance: &NetworkInstance64) -> Tolerances {
    Tolerances {
        tol,
        eps_geo: EPS_GEO,
        eps_sym: default_eps_sym(instance),
        eps_feas: eps_feas(instance),
    }
}

pub(crate) fn elapsed_ms(started: Instant) -> f64 {
    (started.elapsed().as_secs_f64() * 1e6).round() / 1e3
}

/// `yes` / `no` / `-` for optional audit flags.
pub(crate) fn audit_flag(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "yes",
        Some(false) => "no",
        None => "-",
    }
}
