//! Self-describing run reports. Serialized as pretty JSON with fields in
//! declaration order, so identical runs produce identical bytes; the
//! wall-time field sits alone on the final line and is the only part that
//! varies between reruns.

use serde::Serialize;
use symlife_core::{GroupKind, ReductionReport, SymmetryGroup};

/// Every tolerance that influenced the run.
#[derive(Clone, Debug, Serialize)]
pub struct Tolerances {
    /// Pass/fail gate from `--tol`.
    pub tol: f64,
    pub eps_geo: f64,
    pub eps_sym: f64,
    pub eps_feas: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupInfo {
    pub kind: String,
    pub order: usize,
    pub center: [f64; 2],
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitInfo {
    pub index: usize,
    pub size: usize,
    pub kind: String,
    pub stabilizer_order: usize,
    pub members: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionInfo {
    pub t_full: f64,
    pub t_lifted: f64,
    pub relative_gap: f64,
    pub pass: bool,
    pub lifted_feasible: bool,
    pub invariance_violation: f64,
    pub mirror_crossings: Option<usize>,
    pub nearest_collector_ok: Option<bool>,
    pub orbit_nearest_ok: Option<bool>,
    pub wedge_local_ok: Option<bool>,
    pub region_contained_ok: Option<bool>,
    pub reduced_vars: usize,
    pub full_vars: usize,
    pub non_optimal_region: bool,
}

impl ReductionInfo {
    pub fn from_report(r: &ReductionReport<f64>) -> Self {
        ReductionInfo {
            t_full: r.t_full,
            t_lifted: r.t_lifted,
            relative_gap: r.relative_gap,
            pass: r.pass,
            lifted_feasible: r.lifted_feasible,
            invariance_violation: r.invariance_violation,
            mirror_crossings: r.mirror_crossings,
            nearest_collector_ok: r.nearest_collector_ok,
            orbit_nearest_ok: r.orbit_nearest_ok,
            wedge_local_ok: r.wedge_local_ok,
            region_contained_ok: r.region_contained_ok,
            reduced_vars: r.reduced_vars,
            full_vars: r.full_vars,
            non_optimal_region: r.non_optimal_region,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    /// Echo of the command line.
    pub command: String,
    pub input: String,
    /// SHA-256 of the input file bytes.
    pub instance_digest: String,
    pub tolerances: Tolerances,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbits: Option<Vec<OrbitInfo>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub objective: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sensor_energies: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub collector_intake: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e0: Option<f64>,
    /// Whole cycles until the first battery dies, or `"unbounded"`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lifetime_cycles: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub canonicalized: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariance_violation: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduction: Option<ReductionInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flow_csv: Option<String>,
    pub wall_time_ms: f64,
}

impl RunReport {
    pub fn new(command: String, input: String, instance_digest: String, tolerances: Tolerances) -> Self {
        RunReport {
            command,
            input,
            instance_digest,
            tolerances,
            group: None,
            orbits: None,
            objective: None,
            sensor_energies: None,
            collector_intake: None,
            e0: None,
            lifetime_cycles: None,
            canonicalized: None,
            invariance_violation: None,
            reduction: None,
            flow_csv: None,
            wall_time_ms: 0.0,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

pub fn kind_label(kind: GroupKind) -> &'static str {
    match kind {
        GroupKind::Trivial => "trivial",
        GroupKind::Cyclic(_) => "cyclic",
        GroupKind::Dihedral(_) => "dihedral",
    }
}

/// The one-line group description used across commands, e.g.
/// `dihedral, order 8`.
pub fn group_line(group: &SymmetryGroup<f64>) -> String {
    format!("{}, order {}", kind_label(group.kind), group.order())
}

pub fn group_info(group: &SymmetryGroup<f64>) -> GroupInfo {
    GroupInfo {
        kind: kind_label(group.kind).to_string(),
        order: group.order(),
        center: [group.center.x, group.center.y],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> RunReport {
        RunReport::new(
            "symlife solve net.json".into(),
            "net.json".into(),
            "ff".into(),
            Tolerances { tol: 1e-6, eps_geo: 1e-9, eps_sym: 1e-9, eps_feas: 2e-9 },
        )
    }

    #[test]
    fn wall_time_is_the_last_field() {
        let mut rep = sample();
        rep.objective = Some(1.75);
        rep.wall_time_ms = 3.25;
        let json = rep.to_json();
        let lines: Vec<&str> = json.lines().collect();
        assert!(lines[lines.len() - 2].contains("wall_time_ms"));
        assert_eq!(lines[lines.len() - 1], "}");
    }

    #[test]
    fn reports_differ_only_in_wall_time_across_reruns() {
        let mut a = sample();
        let mut b = sample();
        a.wall_time_ms = 1.0;
        b.wall_time_ms = 2.0;
        let strip = |s: String| -> String {
            s.lines().filter(|l| !l.contains("wall_time_ms")).collect::<Vec<_>>().join("\n")
        };
        assert_eq!(strip(a.to_json()), strip(b.to_json()));
    }

    #[test]
    fn unset_sections_are_omitted() {
        let json = sample().to_json();
        assert!(!json.contains("reduction"));
        assert!(!json.contains("lifetime_cycles"));
        assert!(json.contains("instance_digest"));
    }
}
