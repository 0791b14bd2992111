//! `symlife`: max-lifetime routing for planar sensor networks, with
//! symmetry detection, canonical optima, and fundamental-region
//! reduction.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use symlife_cli::commands::{self, solve::SolveArgs};
use symlife_cli::logging;

#[derive(Parser)]
#[command(name = "symlife", version, about = "Max-lifetime sensor routing with symmetry reduction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Detect the isometry group and orbit structure of a network.
    Detect {
        /// Network JSON file (schema v1).
        network: PathBuf,
        /// Directory for the report; omit to skip writing one.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve the max-lifetime routing program and write flow + report.
    Solve {
        /// Network JSON file (schema v1).
        network: PathBuf,
        /// Pass/fail tolerance echoed into the report.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Initial battery energy; reports whole lifetime cycles.
        #[arg(long)]
        e0: Option<f64>,
        /// Symmetrize, de-orbit, and cancel opposing flows first.
        #[arg(long)]
        canonicalize: bool,
        /// Output directory (default: current directory).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reduce to a fundamental region, lift, and compare with a full solve.
    Verify {
        /// Network JSON file (schema v1).
        network: PathBuf,
        /// Relative gap tolerance for the pass flag.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Directory for the report; omit to skip writing one.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a symmetric network from a generator description.
    Generate {
        /// Generator JSON file (schema v1).
        genspec: PathBuf,
        /// Override the RNG seed used for random seed orbits.
        #[arg(long)]
        seed: Option<u64>,
        /// Output directory (default: current directory).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a batch of instances from a config file and emit CSV rows.
    Sweep {
        /// Sweep config JSON file (schema v1).
        config: PathBuf,
        /// Relative gap tolerance (overrides the config value).
        #[arg(long)]
        tol: Option<f64>,
        /// Output directory (default: current directory).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = logging::init_from_env() {
        eprintln!("error: {}", e.message);
        return ExitCode::from(e.code);
    }
    let echo = std::iter::once("symlife".to_string())
        .chain(std::env::args().skip(1))
        .collect::<Vec<_>>()
        .join(" ");
    let result = match &cli.command {
        Command::Detect { network, out } => commands::detect::run(network, out, &echo),
        Command::Solve { network, tol, e0, canonicalize, out } => {
            let args =
                SolveArgs { tol: *tol, e0: *e0, canonicalize: *canonicalize, out: out.clone() };
            commands::solve::run(network, &args, &echo)
        }
        Command::Verify { network, tol, out } => commands::verify::run(network, *tol, out, &echo),
        Command::Generate { genspec, seed, out } => commands::generate::run(genspec, *seed, out),
        Command::Sweep { config, tol, out } => commands::sweep::run(config, *tol, out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
