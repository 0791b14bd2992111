//! `symlife detect`: group kind and order, orbit table, stabilizer
//! summary.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use symlife_core::{default_eps_sym, detect_symmetry_group, orbits, stabilizer};

use crate::formats::{load_network, write_file};
use crate::report::{group_info, group_line, kind_label, OrbitInfo, RunReport};
use crate::{logging, CliResult};

use super::{elapsed_ms, out_file, tolerances};

pub fn run(network: &Path, out: &Option<PathBuf>, echo: &str) -> CliResult<()> {
    let started = Instant::now();
    let (instance, digest) = load_network(network)?;
    let eps = default_eps_sym(&instance);
    logging::debug(format!("detection tolerance {eps}"));
    let group = detect_symmetry_group(&instance, eps);
    let partition = orbits(&group, &instance);

    println!("group: {}", group_line(&group));
    println!("center: ({}, {})", group.center.x, group.center.y);
    println!("orbit  size  kind       stabilizer  members");
    let mut infos = Vec::new();
    let mut stab_counts: BTreeMap<usize, usize> = BTreeMap::new();
    for (index, members) in partition.orbits.iter().enumerate() {
        let kind = if instance.is_collector(members[0]) { "collector" } else { "sensor" };
        let stab = stabilizer(&group, members[0]).len();
        let list = members.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" ");
        println!("{index:<6} {:<5} {kind:<10} {stab:<11} {list}", members.len());
        for &node in members {
            *stab_counts.entry(stabilizer(&group, node).len()).or_insert(0) += 1;
        }
        infos.push(OrbitInfo {
            index,
            size: members.len(),
            kind: kind.to_string(),
            stabilizer_order: stab,
            members: members.clone(),
        });
    }
    let summary = stab_counts
        .iter()
        .rev()
        .map(|(order, count)| format!("order {order} x {count}"))
        .collect::<Vec<_>>()
        .join(", ");
    println!("stabilizers: {summary}");

    if out.is_some() {
        let mut report =
            RunReport::new(echo.to_string(), network.display().to_string(), digest, tolerances(1e-6, &instance));
        report.group = Some(group_info(&group));
        report.orbits = Some(infos);
        report.wall_time_ms = elapsed_ms(started);
        let path = out_file(out, network, ".detect.json");
        write_file(&path, &report.to_json())?;
        println!("report: {}", path.display());
    }
    logging::debug(format!("detected {} in {} ms", kind_label(group.kind), elapsed_ms(started)));
    Ok(())
}
