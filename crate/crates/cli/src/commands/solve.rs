//! `symlife solve`: solve the min-max routing program, optionally
//! canonicalize the optimum, and write the flow CSV plus a run report.

use std::path::{Path, PathBuf};
use std::time::Instant;

use symlife_core::{
    build_energy_matrix, cancel_pairwise, check_invariance, default_eps_sym, detect_symmetry_group,
    lifetime_cycles, orbits, remove_intra_orbit, sensor_energies, solve_max_lifetime, symmetrize,
    Lifetime,
};

use crate::formats::{flow_to_csv, load_network, write_file};
use crate::report::{group_info, group_line, RunReport};
use crate::{logging, CliResult};

use super::{elapsed_ms, out_file, tolerances};

pub struct SolveArgs {
    pub tol: f64,
    pub e0: Option<f64>,
    pub canonicalize: bool,
    pub out: Option<PathBuf>,
}

pub fn run(network: &Path, args: &SolveArgs, echo: &str) -> CliResult<()> {
    let started = Instant::now();
    let (instance, digest) = load_network(network)?;
    let e = build_energy_matrix(&instance)?;
    logging::info(format!(
        "solving {} nodes ({} collectors, {} sensors)",
        instance.len(),
        instance.k(),
        instance.n()
    ));
    let solution = solve_max_lifetime(&instance, &e)?;
    logging::debug(format!("optimum {}", solution.objective));

    let mut report = RunReport::new(
        echo.to_string(),
        network.display().to_string(),
        digest,
        tolerances(args.tol, &instance),
    );
    let mut flow = solution.flow.clone();
    let mut energies = solution.sensor_energies.clone();
    let mut objective = solution.objective;

    if args.canonicalize {
        let group = detect_symmetry_group(&instance, default_eps_sym(&instance));
        logging::info(format!("canonicalizing over {}", group_line(&group)));
        if group.order() >= 2 {
            let partition = orbits(&group, &instance);
            flow = symmetrize(&flow, &group);
            flow = remove_intra_orbit(&flow, &partition, &group)?;
        }
        flow = cancel_pairwise(&flow);
        energies = sensor_energies(&flow, &e);
        objective = energies.iter().fold(0.0, |a, &b| a.max(b));
        let inv = check_invariance(&flow, &group, 1e-12);
        report.group = Some(group_info(&group));
        report.canonicalized = Some(true);
        report.invariance_violation = Some(inv.max_violation);
    }

    println!("objective: {objective}");
    report.objective = Some(objective);
    report.sensor_energies = Some(energies);
    report.collector_intake = Some(
        (0..instance.k())
            .map(|c| (0..instance.len()).map(|i| flow.get(i, c)).sum())
            .collect(),
    );

    if let Some(e0) = args.e0 {
        let cycles = match lifetime_cycles(e0, &solution)? {
            Lifetime::Cycles(c) => c.to_string(),
            Lifetime::Unbounded => "unbounded".to_string(),
        };
        println!("cycles: {cycles}");
        report.e0 = Some(e0);
        report.lifetime_cycles = Some(cycles);
    }

    let flow_path = out_file(&args.out, network, ".flow.csv");
    write_file(&flow_path, &flow_to_csv(&flow))?;
    report.flow_csv = Some(flow_path.display().to_string());
    report.wall_time_ms = elapsed_ms(started);

    let report_path = out_file(&args.out, network, ".report.json");
    write_file(&report_path, &report.to_json())?;
    println!("flow: {}", flow_path.display());
    println!("report: {}", report_path.display());
    Ok(())
}
