//! `symlife verify`: reduce to the fundamental region, lift, and compare
//! against a full solve; exit 0 only when everything passes at `--tol`.

use std::path::{Path, PathBuf};
use std::time::Instant;

use symlife_core::{
    build_energy_matrix, default_eps_sym, detect_symmetry_group, fundamental_region, orbits,
    verify_reduction, Error,
};

use crate::formats::{load_network, write_file};
use crate::report::{group_info, group_line, ReductionInfo, RunReport};
use crate::{logging, CliError, CliResult};

use super::{audit_flag, elapsed_ms, out_file, tolerances};

pub fn run(network: &Path, tol: f64, out: &Option<PathBuf>, echo: &str) -> CliResult<()> {
    let started = Instant::now();
    let (instance, digest) = load_network(network)?;
    let e = build_energy_matrix(&instance)?;
    let group = detect_symmetry_group(&instance, default_eps_sym(&instance));
    println!("group: {}", group_line(&group));
    if group.is_trivial() {
        return Err(Error::NothingToReduce.into());
    }
    let partition = orbits(&group, &instance);
    let region = fundamental_region(&group, &instance, &partition)?;
    if region.non_optimal {
        logging::info("falling back to a plain wedge region (closure check failed)");
    }
    let rep = verify_reduction(&instance, &e, &group, &region, tol)?;

    println!("t_full: {}", rep.t_full);
    println!("t_lifted: {}", rep.t_lifted);
    println!("gap: {}", rep.relative_gap);
    println!("vars: {} full, {} reduced", rep.full_vars, rep.reduced_vars);
    let crossings = rep
        .mirror_crossings
        .map(|c| c.to_string())
        .unwrap_or_else(|| "-".to_string());
    println!(
        "audits: feasible={} invariance={} mirror_crossings={} nearest_collector={} orbit_nearest={} wedge_local={} region_contained={}",
        if rep.lifted_feasible { "yes" } else { "no" },
        rep.invariance_violation,
        crossings,
        audit_flag(rep.nearest_collector_ok),
        audit_flag(rep.orbit_nearest_ok),
        audit_flag(rep.wedge_local_ok),
        audit_flag(rep.region_contained_ok),
    );

    if out.is_some() {
        let mut report =
            RunReport::new(echo.to_string(), network.display().to_string(), digest, tolerances(tol, &instance));
        report.group = Some(group_info(&group));
        report.reduction = Some(ReductionInfo::from_report(&rep));
        report.wall_time_ms = elapsed_ms(started);
        let path = out_file(out, network, ".verify.json");
        write_file(&path, &report.to_json())?;
        println!("report: {}", path.display());
    }

    if rep.pass {
        println!("verification: pass");
        Ok(())
    } else {
        println!("verification: fail");
        Err(CliError::domain(format!(
            "verification failed (gap {}, tol {tol})",
            rep.relative_gap
        )))
    }
}
