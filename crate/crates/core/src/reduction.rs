//! Fundamental-region reduction: restrict the problem to one region, solve
//! the small program, lift the optimum back over the group, and verify
//! that nothing was lost.

use crate::canonical::check_invariance;
use crate::error::{Error, Result};
use crate::geometry::{distance, normalize_angle, polar_angle, wedge_classify_angle, Half};
use crate::model::{check_monotone, EnergyMatrix, NetworkInstance};
use crate::scalar::{c, Scalar, EPS_GEO};
use crate::solver::{
    conservation_residuals, eps_feas, sensor_energies, solve_max_lifetime, FlowMatrix, Solution,
};
use crate::symmetry::{orbits, stabilizer, FundamentalRegion, SymmetryGroup};

/// The routing problem restricted to a fundamental region plus its border
/// and center collectors.
#[derive(Clone, Debug)]
pub struct ReducedInstance<T> {
    pub base: NetworkInstance<T>,
    /// Entrywise restriction of the full energy matrix.
    pub energy: EnergyMatrix<T>,
    /// Reduced node index to full node index.
    pub index_map: Vec<usize>,
    pub group: SymmetryGroup<T>,
    pub region: FundamentalRegion<T>,
    pub full_len: usize,
    pub full_k: usize,
}

fn invariance_tol<T: Scalar>(max_abs: T) -> T {
    c::<T>(1e-9) * (T::one() + max_abs)
}

/// Restrict the instance to the region's nodes.
///
/// Requires `(E, Q)` to be group-invariant and `E` distance-monotone;
/// both are hypotheses of the region optimality results, not artifacts of
/// the implementation.
pub fn reduce_instance<T: Scalar>(
    instance: &NetworkInstance<T>,
    e: &EnergyMatrix<T>,
    group: &SymmetryGroup<T>,
    region: &FundamentalRegion<T>,
) -> Result<ReducedInstance<T>> {
    let total = instance.len();
    if e.dim() != total {
        return Err(Error::DimensionMismatch(format!(
            "energy matrix is {}x{} but the instance has {total} nodes",
            e.dim(),
            e.dim()
        )));
    }
    if group.elements.iter().any(|g| g.perm.len() != total) {
        return Err(Error::DimensionMismatch("group permutations do not cover all nodes".into()));
    }

    let e_max = (0..total)
        .flat_map(|i| (0..total).map(move |j| (i, j)))
        .map(|(i, j)| e.get(i, j).abs())
        .fold(T::zero(), T::max);
    let e_tol = invariance_tol(e_max);
    for g in &group.elements {
        for i in 0..total {
            for j in 0..total {
                if (e.get(g.perm[i], g.perm[j]) - e.get(i, j)).abs() > e_tol {
                    return Err(Error::NotGroupInvariant("energy matrix"));
                }
            }
        }
    }
    let q_max = instance.data.iter().fold(T::zero(), |a, &b| a.max(b.abs()));
    let q_tol = invariance_tol(q_max);
    for g in &group.elements {
        for i in instance.k()..total {
            if (instance.data_of(g.perm[i]) - instance.data_of(i)).abs() > q_tol {
                return Err(Error::NotGroupInvariant("data volumes"));
            }
        }
    }
    if !check_monotone(e, instance) {
        return Err(Error::NotDistanceMonotone);
    }

    let kept = region.kept_nodes();
    let mut index_map: Vec<usize> = kept.iter().copied().filter(|&i| instance.is_collector(i)).collect();
    let sensors_kept: Vec<usize> = kept.iter().copied().filter(|&i| !instance.is_collector(i)).collect();
    if index_map.is_empty() {
        return Err(Error::ReducedNoSink);
    }
    for &i in &sensors_kept {
        debug_assert_eq!(stabilizer(group, i).len(), 1, "region sensor with nontrivial stabilizer");
    }
    index_map.extend_from_slice(&sensors_kept);

    let k_red = index_map.len() - sensors_kept.len();
    let base = NetworkInstance {
        collectors: index_map[..k_red].iter().map(|&i| instance.point(i)).collect(),
        sensors: index_map[k_red..].iter().map(|&i| instance.point(i)).collect(),
        data: index_map[k_red..].iter().map(|&i| instance.data_of(i)).collect(),
        energy_model: instance.energy_model.clone(),
    };
    let n_red = index_map.len();
    let mut entries = vec![vec![T::zero(); n_red]; n_red];
    for (a, &i) in index_map.iter().enumerate() {
        for (b, &j) in index_map.iter().enumerate() {
            if a != b {
                entries[a][b] = e.get(i, j);
            }
        }
    }
    Ok(ReducedInstance {
        base,
        energy: EnergyMatrix { entries },
        index_map,
        group: group.clone(),
        region: region.clone(),
        full_len: total,
        full_k: instance.k(),
    })
}

/// Replicate a reduced solution over the group:
/// `q_full[g(i)][g(j)] = q_red[i][j]` for every element `g`.
///
/// Region sensors have trivial stabilizers and distinct reduced nodes lie
/// in distinct orbits, so no two writes of a nonzero value collide; the
/// per-node energies are replicated as values, which makes the lifted
/// objective equal the reduced one exactly.
pub fn lift_solution<T: Scalar>(reduced_solution: &Solution<T>, reduced: &ReducedInstance<T>) -> Solution<T> {
    let n_red = reduced.index_map.len();
    let n_full = reduced.full_len;
    let mut flow = FlowMatrix::zeros(n_full);
    let mut energies = vec![T::zero(); n_full];
    for g in &reduced.group.elements {
        for (a, &i) in reduced.index_map.iter().enumerate() {
            let gi = g.perm[i];
            for (b, &j) in reduced.index_map.iter().enumerate() {
                if a != b {
                    let v = reduced_solution.flow.get(a, b);
                    if v != T::zero() {
                        flow.entries[gi][g.perm[j]] = v;
                    }
                }
            }
            energies[gi] = reduced_solution.sensor_energies[a];
        }
    }
    debug_assert_eq!(n_red, reduced.base.len());
    let collector_intake = (0..reduced.full_k)
        .map(|k| (0..n_full).map(|i| flow.get(i, k)).fold(T::zero(), |acc, v| acc + v))
        .collect();
    Solution {
        flow,
        objective: reduced_solution.objective,
        sensor_energies: energies,
        collector_intake,
    }
}

/// Outcome of solving both the full and the reduced problem and comparing.
///
/// Audits that do not apply to the group at hand are `None`: mirror and
/// nearest-collector checks are dihedral-side, the orbit and wedge checks
/// rotation-side.
#[derive(Clone, Debug)]
pub struct ReductionReport<T> {
    pub t_full: T,
    pub t_lifted: T,
    pub relative_gap: T,
    pub pass: bool,
    pub lifted_feasible: bool,
    /// Worst invariance violation of the lifted flow (zero by construction).
    pub invariance_violation: T,
    /// Lifted flow edges joining strictly opposite sides of a mirror line.
    pub mirror_crossings: Option<usize>,
    /// Every lifted sensor-to-collector edge targets a nearest collector.
    pub nearest_collector_ok: Option<bool>,
    /// Every lifted inter-orbit edge targets a nearest member of the
    /// destination orbit.
    pub orbit_nearest_ok: Option<bool>,
    /// Every lifted edge out of wedge `V_m` lands in
    /// `V_{m-1}^+ ∪ V_m ∪ V_{m+1}^-`.
    pub wedge_local_ok: Option<bool>,
    /// Region nodes all lie in the connected band
    /// `V_{M-1}^+ ∪ V_0 ∪ V_1^-` around the seed direction.
    pub region_contained_ok: Option<bool>,
    /// Flow variable counts of the two programs.
    pub reduced_vars: usize,
    pub full_vars: usize,
    pub non_optimal_region: bool,
}

/// Reroute sensor-to-collector flow onto a nearest collector.
///
/// With a distance-monotone energy matrix this never raises a sensor
/// energy and leaves conservation untouched, so an optimum stays optimal;
/// it restores the witness form the region results are stated for, which
/// a degenerate LP vertex is free to deviate from.
fn reroute_to_nearest_collector<T: Scalar>(
    solution: &Solution<T>,
    instance: &NetworkInstance<T>,
    e: &EnergyMatrix<T>,
) -> Solution<T> {
    let k = instance.k();
    let mut flow = solution.flow.clone();
    let mut changed = false;
    for i in k..instance.len() {
        let pi = instance.point(i);
        let d_min = (0..k).map(|c| distance(pi, instance.point(c))).fold(T::infinity(), T::min);
        let target = (0..k)
            .find(|&c| distance(pi, instance.point(c)) == d_min)
            .expect("reduced instance has a collector");
        let band = d_min + c::<T>(EPS_GEO) * (T::one() + d_min);
        for col in 0..k {
            if col != target && flow.entries[i][col] > T::zero() && distance(pi, instance.point(col)) > band {
                let moved = flow.entries[i][col];
                flow.entries[i][target] += moved;
                flow.entries[i][col] = T::zero();
                changed = true;
            }
        }
    }
    if !changed {
        return solution.clone();
    }
    let sensor_energies = sensor_energies(&flow, e);
    let objective = sensor_energies.iter().fold(T::zero(), |a, &b| a.max(b));
    let collector_intake = (0..k)
        .map(|c| (0..instance.len()).map(|i| flow.get(i, c)).fold(T::zero(), |acc, v| acc + v))
        .collect();
    Solution { flow, objective, sensor_energies, collector_intake }
}

/// Solve full and reduced problems and audit the lifted optimum.
pub fn verify_reduction<T: Scalar>(
    instance: &NetworkInstance<T>,
    e: &EnergyMatrix<T>,
    group: &SymmetryGroup<T>,
    region: &FundamentalRegion<T>,
    tol: T,
) -> Result<ReductionReport<T>> {
    let reduced = reduce_instance(instance, e, group, region)?;
    let red_sol = solve_max_lifetime(&reduced.base, &reduced.energy)?;
    let red_sol = reroute_to_nearest_collector(&red_sol, &reduced.base, &reduced.energy);
    let lifted = lift_solution(&red_sol, &reduced);
    let full_sol = solve_max_lifetime(instance, e)?;

    let t_full = full_sol.objective;
    let t_lifted = lifted.objective;
    let relative_gap = (t_full - t_lifted).abs() / t_full.abs().max(c::<T>(1e-12));

    let feas_tol = eps_feas(instance) * c::<T>(4.0);
    let residuals = conservation_residuals(&lifted.flow, instance);
    let mut lifted_feasible = residuals.iter().all(|h| h.abs() <= feas_tol);
    let recomputed = sensor_energies(&lifted.flow, e);
    let energy_tol = tol.max(c::<T>(1e-9)) * (T::one() + t_lifted.abs());
    for (re, st) in recomputed.iter().zip(&lifted.sensor_energies) {
        if (*re - *st).abs() > energy_tol {
            lifted_feasible = false;
        }
    }
    let invariance_violation = check_invariance(&lifted.flow, group, c::<T>(1e-12)).max_violation;

    let flow_eps = eps_feas(instance);
    let total = instance.len();
    let center = group.center;
    let mut mirror_crossings = None;
    let mut nearest_collector_ok = None;
    let mut orbit_nearest_ok = None;
    let mut wedge_local_ok = None;
    let mut region_contained_ok = None;

    if region.dihedral {
        let mirrors: Vec<T> = group
            .elements
            .iter()
            .filter(|g| g.iso.is_reflection())
            .map(|g| g.iso.reflection_axis())
            .collect();
        let mut crossings = 0usize;
        for i in 0..total {
            for j in 0..total {
                if lifted.flow.get(i, j) <= flow_eps {
                    continue;
                }
                let a = instance.point(i).sub(center);
                let b = instance.point(j).sub(center);
                let crossed = mirrors.iter().any(|&phi| {
                    let (s, co) = phi.sin_cos();
                    let side_a = co * a.y - s * a.x;
                    let side_b = co * b.y - s * b.x;
                    let lim_a = c::<T>(EPS_GEO) * (T::one() + a.norm());
                    let lim_b = c::<T>(EPS_GEO) * (T::one() + b.norm());
                    side_a.abs() > lim_a && side_b.abs() > lim_b && (side_a > T::zero()) != (side_b > T::zero())
                });
                if crossed {
                    crossings += 1;
                }
            }
        }
        mirror_crossings = Some(crossings);
        nearest_collector_ok = Some(audit_nearest_collector(instance, &lifted.flow, flow_eps));
    } else {
        let partition = orbits(group, instance);
        let mut orbit_ok = true;
        for i in instance.k()..total {
            let pi = instance.point(i);
            for j in 0..total {
                if i == j || lifted.flow.get(i, j) <= flow_eps || partition.orbit_of[i] == partition.orbit_of[j] {
                    continue;
                }
                let d = distance(pi, instance.point(j));
                let d_min = partition.orbits[partition.orbit_of[j]]
                    .iter()
                    .map(|&x| distance(pi, instance.point(x)))
                    .fold(T::infinity(), T::min);
                if d > d_min + c::<T>(EPS_GEO) * (T::one() + d_min) {
                    orbit_ok = false;
                }
            }
        }
        orbit_nearest_ok = Some(orbit_ok);

        let m = region.fold;
        let frame = region.frame_angle;
        let node_wedge = |i: usize| {
            let rel = instance.point(i).sub(center);
            if rel.norm() <= c::<T>(EPS_GEO) * (T::one() + instance.diameter()) {
                None
            } else {
                Some(wedge_classify_angle(normalize_angle(polar_angle(rel) - frame), m))
            }
        };
        let mut local_ok = true;
        for i in instance.k()..total {
            let Some(wi) = node_wedge(i) else { continue };
            for j in 0..total {
                if i == j || lifted.flow.get(i, j) <= flow_eps {
                    continue;
                }
                let Some(wj) = node_wedge(j) else { continue };
                let allowed = wj.sector == wi.sector
                    || (wj.sector == (wi.sector + m - 1) % m && wj.half == Half::Plus)
                    || (wj.sector == (wi.sector + 1) % m && wj.half == Half::Minus);
                if !allowed {
                    local_ok = false;
                }
            }
        }
        wedge_local_ok = Some(local_ok);

        let mut contained = true;
        for &i in &region.nodes {
            let Some(w) = node_wedge(i) else { continue };
            let in_band = w.sector == 0
                || (w.sector == m - 1 && w.half == Half::Plus)
                || (w.sector == 1 && w.half == Half::Minus);
            if !in_band {
                contained = false;
            }
        }
        region_contained_ok = Some(contained);
    }

    let audits_ok = mirror_crossings.map_or(true, |n| n == 0)
        && nearest_collector_ok.unwrap_or(true)
        && orbit_nearest_ok.unwrap_or(true)
        && wedge_local_ok.unwrap_or(true)
        && region_contained_ok.unwrap_or(true);
    let pass = relative_gap <= tol && lifted_feasible && audits_ok;

    Ok(ReductionReport {
        t_full,
        t_lifted,
        relative_gap,
        pass,
        lifted_feasible,
        invariance_violation,
        mirror_crossings,
        nearest_collector_ok,
        orbit_nearest_ok,
        wedge_local_ok,
        region_contained_ok,
        reduced_vars: reduced.base.n() * (reduced.base.len() - 1),
        full_vars: instance.n() * (instance.len() - 1),
        non_optimal_region: region.non_optimal,
    })
}

fn audit_nearest_collector<T: Scalar>(
    instance: &NetworkInstance<T>,
    flow: &FlowMatrix<T>,
    flow_eps: T,
) -> bool {
    for i in instance.k()..instance.len() {
        let pi = instance.point(i);
        let d_min = (0..instance.k()).map(|j| distance(pi, instance.point(j))).fold(T::infinity(), T::min);
        for j in 0..instance.k() {
            if flow.get(i, j) > flow_eps
                && distance(pi, instance.point(j)) > d_min + c::<T>(EPS_GEO) * (T::one() + d_min)
            {
                return false;
            }
        }
    }
    true
}
