//! `symlife sweep`: run every instance named by a config file, emit one
//! CSV row each, and write plot-data files. Per-instance failures become
//! rows with error text and the sweep keeps going.

use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use symlife_core::{
    build_energy_matrix, default_eps_sym, detect_symmetry_group, fundamental_region, generate,
    orbits, reduce_instance, solve_max_lifetime, verify_reduction, Error, GeneratorSpec,
    GroupKind, NetworkInstance64,
};

use crate::formats::{
    csv_field, draw_sensor_seeds, expand_pattern, load_network, parse_gen_kind, parse_json,
    read_to_string, terms_to_model, write_file, SweepConfig, SCHEMA_VERSION,
};
use crate::report::kind_label;
use crate::{logging, CliError, CliResult};

use super::out_file;

const HEADER: &str =
    "instance,kind,m,order,orbits,sensors,t_full,t_lifted,gap,pass,reduced_vars,full_vars,error,full_ms,reduced_ms";

enum Source {
    File(String),
    Gen { label: String, spec: GeneratorSpec<f64> },
}

struct RowData {
    kind: &'static str,
    m: usize,
    order: usize,
    orbits: usize,
    sensors: usize,
    t_full: f64,
    t_lifted: f64,
    gap: f64,
    pass: bool,
    reduced_vars: usize,
    full_vars: usize,
    full_ms: f64,
    reduced_ms: f64,
}

pub fn run(config_path: &Path, tol_flag: Option<f64>, out: &Option<PathBuf>) -> CliResult<()> {
    let text = read_to_string(config_path)?;
    let cfg: SweepConfig = parse_json(config_path, &text)?;
    if cfg.schema != SCHEMA_VERSION {
        return Err(CliError::usage(format!(
            "unsupported schema version {} (expected {SCHEMA_VERSION})",
            cfg.schema
        )));
    }
    let tol = tol_flag.or(cfg.tol).unwrap_or(1e-6);

    let mut sources = Vec::new();
    for pattern in &cfg.files {
        for path in expand_pattern(pattern)? {
            sources.push(Source::File(path.display().to_string()));
        }
    }
    for (batch, gen) in cfg.generated.iter().enumerate() {
        let energy_model = terms_to_model(&gen.energy_model)?;
        for &m in &gen.m_values {
            let kind = parse_gen_kind(&gen.kind, m)?;
            for &seed in &gen.rng_seeds {
                // golden-ratio multiplier decorrelates the per-fold streams
                let stream = seed ^ (m as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
                let mut rng = ChaCha8Rng::seed_from_u64(stream);
                let seeds = draw_sensor_seeds(kind, gen.orbits, gen.radius_range, &mut rng);
                let spec = GeneratorSpec {
                    kind,
                    seeds,
                    center_collector: true,
                    border_c0: vec![],
                    border_c1: vec![],
                    energy_model: energy_model.clone(),
                    rng_seed: seed,
                };
                sources.push(Source::Gen {
                    label: format!("g{batch}-{}{m}-s{seed}", gen.kind),
                    spec,
                });
            }
        }
    }

    let mut csv = String::from(HEADER);
    csv.push('\n');
    let mut plot_gap = String::from("m,gap\n");
    let mut plot_vars = String::from("m,full_vars,reduced_vars\n");
    let mut failures = 0usize;
    for source in &sources {
        let label = match source {
            Source::File(path) => path.clone(),
            Source::Gen { label, .. } => label.clone(),
        };
        match run_one(source, tol) {
            Ok(row) => {
                logging::info(format!("{label}: gap {}", row.gap));
                csv.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{},{},{},,{:.3},{:.3}\n",
                    csv_field(&label),
                    row.kind,
                    row.m,
                    row.order,
                    row.orbits,
                    row.sensors,
                    row.t_full,
                    row.t_lifted,
                    row.gap,
                    row.pass,
                    row.reduced_vars,
                    row.full_vars,
                    row.full_ms,
                    row.reduced_ms,
                ));
                plot_gap.push_str(&format!("{},{}\n", row.m, row.gap));
                plot_vars.push_str(&format!("{},{},{}\n", row.m, row.full_vars, row.reduced_vars));
                if !row.pass {
                    failures += 1;
                }
            }
            Err(e) => {
                logging::info(format!("{label}: {}", e.message));
                failures += 1;
                csv.push_str(&format!(
                    "{},,,,,,,,,,,,{},,\n",
                    csv_field(&label),
                    csv_field(&e.message)
                ));
            }
        }
    }

    let csv_path = out_file(out, config_path, ".sweep.csv");
    write_file(&csv_path, &csv)?;
    let gap_path = out_file(out, config_path, ".plot_gap.csv");
    write_file(&gap_path, &plot_gap)?;
    let vars_path = out_file(out, config_path, ".plot_vars.csv");
    write_file(&vars_path, &plot_vars)?;

    println!("rows: {}", sources.len());
    println!("failures: {failures}");
    println!("sweep: {}", csv_path.display());
    println!("plots: {}, {}", gap_path.display(), vars_path.display());
    if failures > 0 {
        Err(CliError::domain(format!("sweep completed with {failures} failed instance(s)")))
    } else {
        Ok(())
    }
}

fn run_one(source: &Source, tol: f64) -> CliResult<RowData> {
    let instance: NetworkInstance64 = match source {
        Source::File(path) => load_network(Path::new(path))?.0,
        Source::Gen { spec, .. } => generate(spec)?,
    };
    let e = build_energy_matrix(&instance)?;
    let mut group = detect_symmetry_group(&instance, default_eps_sym(&instance));
    if group.is_trivial() {
        return Err(Error::NothingToReduce.into());
    }
    let mut partition = orbits(&group, &instance);
    let region = match fundamental_region(&group, &instance, &partition) {
        Ok(region) => region,
        // Mirror lines through sensors block the full dihedral group, but
        // the rotation subgroup still acts freely, so reduce by that.
        Err(Error::NontrivialSensorStabilizer(_))
            if matches!(group.kind, GroupKind::Dihedral(_)) =>
        {
            group = group.rotation_subgroup();
            partition = orbits(&group, &instance);
            fundamental_region(&group, &instance, &partition)?
        }
        Err(e) => return Err(e.into()),
    };

    let t0 = Instant::now();
    let full = solve_max_lifetime(&instance, &e)?;
    let full_ms = t0.elapsed().as_secs_f64() * 1e3;
    let t1 = Instant::now();
    let reduced = reduce_instance(&instance, &e, &group, &region)?;
    let _ = solve_max_lifetime(&reduced.base, &reduced.energy)?;
    let reduced_ms = t1.elapsed().as_secs_f64() * 1e3;

    let rep = verify_reduction(&instance, &e, &group, &region, tol)?;
    let m = match group.kind {
        GroupKind::Trivial => 1,
        GroupKind::Cyclic(m) | GroupKind::Dihedral(m) => m,
    };
    debug_assert_eq!(rep.t_full, full.objective);
    Ok(RowData {
        kind: kind_label(group.kind),
        m,
        order: group.order(),
        orbits: partition.orbits.len(),
        sensors: instance.n(),
        t_full: rep.t_full,
        t_lifted: rep.t_lifted,
        gap: rep.relative_gap,
        pass: rep.pass,
        reduced_vars: rep.reduced_vars,
        full_vars: rep.full_vars,
        full_ms,
        reduced_ms,
    })
}
