//! The max-lifetime min-max problem as an epigraph linear program, solved
//! with a dense two-phase simplex under a deterministic pivot rule.
//!
//! Variables are the flows `q[i][j]` for every sensor `i` and target
//! `j != i`, the epigraph variable `t`, and one slack per sensor energy
//! row. Constraints: `E_i(q) <= t` per sensor, flow conservation
//! `Σ_j (q[i][j] - q[j][i]) = Q_i` per sensor, `q >= 0`, and collector
//! rows of `q` held at zero by not being variables at all.

use crate::error::{Error, Result};
use crate::model::{EnergyMatrix, NetworkInstance};
use crate::scalar::{c, prec, Scalar, EPS_OPT};

/// Routed data per node pair; rows of collectors are identically zero.
#[derive(Clone, Debug)]
pub struct FlowMatrix<T> {
    pub entries: Vec<Vec<T>>,
}

impl<T: Scalar> FlowMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        FlowMatrix { entries: vec![vec![T::zero(); dim]; dim] }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.entries[i][j]
    }

    pub fn max_entry(&self) -> T {
        let mut m = T::zero();
        for row in &self.entries {
            for &v in row {
                m = m.max(v);
            }
        }
        m
    }
}

/// An optimum of the min-max problem.
#[derive(Clone, Debug)]
pub struct Solution<T> {
    pub flow: FlowMatrix<T>,
    /// `t*`, the largest per-sensor energy.
    pub objective: T,
    /// Per-node energies; collectors hold zero.
    pub sensor_energies: Vec<T>,
    /// Total data received by each collector.
    pub collector_intake: Vec<T>,
}

/// Per-sensor energies `E_i = Σ_{j≠i} q[i][j]·E[i][j]` (zero for collectors).
pub fn sensor_energies<T: Scalar>(q: &FlowMatrix<T>, e: &EnergyMatrix<T>) -> Vec<T> {
    assert_eq!(q.dim(), e.dim(), "flow and energy dimensions differ");
    let n = q.dim();
    let mut out = vec![T::zero(); n];
    for i in 0..n {
        let mut acc = T::zero();
        for j in 0..n {
            if j != i {
                acc += q.get(i, j) * e.get(i, j);
            }
        }
        out[i] = acc;
    }
    out
}

/// Conservation residuals `h_i = Σ_j (q[i][j] - q[j][i]) - Q_i` for every
/// sensor, indexed by sensor (length `n`).
///
/// The sum is accumulated per opposing pair, in ascending `j`, so pairwise
/// cancellation of flows leaves the residuals bit-identical.
pub fn conservation_residuals<T: Scalar>(q: &FlowMatrix<T>, instance: &NetworkInstance<T>) -> Vec<T> {
    let k = instance.k();
    let mut out = Vec::with_capacity(instance.n());
    for i in k..instance.len() {
        let mut acc = T::zero();
        for j in 0..instance.len() {
            if j != i {
                acc += q.get(i, j) - q.get(j, i);
            }
        }
        out.push(acc - instance.data_of(i));
    }
    out
}

/// Feasibility tolerance `1e-9·(1 + ‖Q‖∞)`.
pub fn eps_feas<T: Scalar>(instance: &NetworkInstance<T>) -> T {
    let qmax = instance.data.iter().fold(T::zero(), |a, &b| a.max(b.abs()));
    prec::<T>(1e-9) * (T::one() + qmax)
}

/// Network lifetime in whole cycles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lifetime {
    Cycles(u64),
    /// No sensor spends energy, so the network never dies.
    Unbounded,
}

/// `floor(E0 / t*)` data-gathering cycles until the first battery dies.
pub fn lifetime_cycles<T: Scalar>(e0: T, solution: &Solution<T>) -> Result<Lifetime> {
    if !(e0 > T::zero()) || !e0.is_finite() {
        return Err(Error::InvalidInstance("initial energy must be positive".into()));
    }
    if solution.objective <= T::zero() {
        return Ok(Lifetime::Unbounded);
    }
    let cycles = (e0 / solution.objective).floor();
    Ok(Lifetime::Cycles(cycles.to_u64().unwrap_or(u64::MAX)))
}

/// Column layout of the LP for one instance.
struct Layout {
    k: usize,
    total: usize,
    nq: usize,
    t_col: usize,
    n_struct: usize,
}

impl Layout {
    fn new(k: usize, total: usize) -> Self {
        let n = total - k;
        let nq = n * (total - 1);
        Layout { k, total, nq, t_col: nq, n_struct: nq + 1 + n }
    }

    fn qcol(&self, i: usize, j: usize) -> usize {
        debug_assert!(i >= self.k && j != i && j < self.total);
        let local = if j < i { j } else { j - 1 };
        (i - self.k) * (self.total - 1) + local
    }
}

/// Solve the min-max lifetime problem to global optimality.
///
/// Deterministic: identical inputs produce identical outputs. Pivoting is
/// steepest-coefficient with smallest-index tie-breaks, switching to
/// Bland's rule after a run of degenerate pivots so cycling is impossible.
pub fn solve_max_lifetime<T: Scalar>(instance: &NetworkInstance<T>, e: &EnergyMatrix<T>) -> Result<Solution<T>> {
    let k = instance.k();
    let total = instance.len();
    let n = instance.n();
    if k == 0 {
        return Err(Error::NoSink);
    }
    if n == 0 {
        return Err(Error::InvalidInstance("no sensors".into()));
    }
    if e.dim() != total {
        return Err(Error::DimensionMismatch(format!(
            "energy matrix is {}x{} but the instance has {} nodes",
            e.dim(),
            e.dim(),
            total
        )));
    }
    if instance.data.len() != n {
        return Err(Error::InvalidInstance("data length does not match sensor count".into()));
    }
    for &q in &instance.data {
        if !q.is_finite() || q < T::zero() {
            return Err(Error::InvalidInstance("negative or non-finite data volume".into()));
        }
    }

    let lay = Layout::new(k, total);
    let m = 2 * n;
    let n_art = n;
    let width = lay.n_struct + n_art + 1;
    let rhs = width - 1;

    // Constraint rows: n energy rows (slack basic), then n conservation
    // rows (artificial basic).
    let mut tab: Vec<Vec<T>> = vec![vec![T::zero(); width]; m];
    for s in 0..n {
        let i = k + s;
        let row = &mut tab[s];
        for j in 0..total {
            if j != i {
                row[lay.qcol(i, j)] = e.get(i, j);
            }
        }
        row[lay.t_col] = -T::one();
        row[lay.nq + 1 + s] = T::one();
    }
    for s in 0..n {
        let i = k + s;
        let row = &mut tab[n + s];
        for j in 0..total {
            if j != i {
                row[lay.qcol(i, j)] = T::one();
            }
        }
        for j in k..total {
            if j != i {
                row[lay.qcol(j, i)] -= T::one();
            }
        }
        row[lay.n_struct + s] = T::one();
        row[rhs] = instance.data[s];
    }
    let mut basis: Vec<usize> = (0..n).map(|s| lay.nq + 1 + s).chain((0..n).map(|s| lay.n_struct + s)).collect();

    // Phase 1: minimize the artificial sum.
    let mut cost = vec![T::zero(); width - 1];
    for a in 0..n_art {
        cost[lay.n_struct + a] = T::one();
    }
    let phase1 = simplex(&mut tab, &mut basis, &cost, width)?;
    let feas_tol = eps_feas(instance) * c::<T>(10.0);
    if phase1 > feas_tol {
        return Err(Error::Solver(format!("phase 1 ended at {phase1}, expected 0")));
    }

    // Pivot leftover artificials out of the basis on the best-conditioned
    // column; a row with no usable structural column is redundant and
    // dropped.
    let mut r = 0;
    while r < tab.len() {
        if basis[r] >= lay.n_struct {
            let piv_tol = prec::<T>(1e-11);
            let col = (0..lay.n_struct)
                .filter(|&col| tab[r][col].abs() > piv_tol)
                .fold(None, |best: Option<usize>, col| match best {
                    Some(b) if tab[r][b].abs() >= tab[r][col].abs() => Some(b),
                    _ => Some(col),
                });
            if let Some(col) = col {
                pivot(&mut tab, r, col, width);
                basis[r] = col;
                r += 1;
            } else {
                tab.remove(r);
                basis.remove(r);
            }
        } else {
            r += 1;
        }
    }

    // Drop the artificial columns entirely so they cannot re-enter.
    for row in tab.iter_mut() {
        row[lay.n_struct] = row[rhs];
        row.truncate(lay.n_struct + 1);
    }
    let width = lay.n_struct + 1;
    let rhs = lay.n_struct;

    // Phase 2: minimize t.
    let mut cost = vec![T::zero(); width - 1];
    cost[lay.t_col] = T::one();
    let objective_lp = simplex(&mut tab, &mut basis, &cost, width)?;

    // Extract the flow.
    let mut x = vec![T::zero(); lay.n_struct];
    for (r, &b) in basis.iter().enumerate() {
        if b < lay.n_struct {
            x[b] = tab[r][rhs];
        }
    }
    let mut flow = FlowMatrix::zeros(total);
    for i in k..total {
        for j in 0..total {
            if j != i {
                let v = x[lay.qcol(i, j)];
                flow.entries[i][j] = if v > T::zero() { v } else { T::zero() };
            }
        }
    }

    let energies = sensor_energies(&flow, e);
    let objective = energies.iter().fold(T::zero(), |a, &b| a.max(b));
    debug_assert!((objective - objective_lp).abs() <= prec::<T>(1e-6) * (T::one() + objective.abs()));
    let mut collector_intake = vec![T::zero(); k];
    for (cidx, intake) in collector_intake.iter_mut().enumerate() {
        for i in k..total {
            *intake += flow.get(i, cidx);
        }
    }
    Ok(Solution { flow, objective, sensor_energies: energies, collector_intake })
}

/// Reduced-cost row priced out from scratch for the current basis.
fn price_out<T: Scalar>(tab: &[Vec<T>], basis: &[usize], cost: &[T], width: usize) -> Vec<T> {
    let mut z = vec![T::zero(); width];
    for (j, zj) in z.iter_mut().enumerate().take(width - 1) {
        *zj = cost[j];
    }
    for (r, &b) in basis.iter().enumerate() {
        let cb = cost[b];
        if cb != T::zero() {
            for j in 0..width {
                let delta = cb * tab[r][j];
                z[j] -= delta;
            }
        }
    }
    z
}

/// Run the simplex loop to optimality; returns the objective value.
///
/// Symmetric instances make these programs massively degenerate, so the
/// loop defends against the two float failure modes of textbook pivoting:
/// roundoff dust on the right-hand side (snapped to exact zero each
/// iteration, before it can be amplified by a small pivot element and
/// spread as false infeasibility) and drift in the incrementally updated
/// reduced costs (removed by periodic repricing). Leaving ties prefer the
/// largest pivot element; after a long degenerate run the loop enters a
/// Bland episode, whose smallest-index rule guarantees it leaves the
/// vertex, and drops back to the stable rule on the next real step.
fn simplex<T: Scalar>(tab: &mut Vec<Vec<T>>, basis: &mut [usize], cost: &[T], width: usize) -> Result<T> {
    let rhs = width - 1;
    let eps = prec::<T>(EPS_OPT);
    let piv_tol = prec::<T>(1e-11);

    let mut rhs_scale = T::zero();
    for row in tab.iter() {
        rhs_scale = rhs_scale.max(row[rhs].abs());
    }
    let snap_tol = prec::<T>(1e-11) * (T::one() + rhs_scale);

    let mut z = price_out(tab, basis, cost, width);

    let mut bland = false;
    let mut degenerate_run = 0usize;
    let max_iters = 2000 + 200 * (tab.len() + width);
    for it in 0..max_iters {
        if it % 128 == 127 {
            z = price_out(tab, basis, cost, width);
        }
        for row in tab.iter_mut() {
            if row[rhs].abs() <= snap_tol {
                row[rhs] = T::zero();
            }
        }

        // Entering column.
        let mut enter: Option<usize> = None;
        if bland {
            for (j, &zj) in z.iter().enumerate().take(width - 1) {
                if zj < -eps {
                    enter = Some(j);
                    break;
                }
            }
        } else {
            let mut best = -eps;
            for (j, &zj) in z.iter().enumerate().take(width - 1) {
                if zj < best {
                    best = zj;
                    enter = Some(j);
                }
            }
        }
        let Some(jcol) = enter else {
            return Ok(-z[rhs]);
        };

        // Ratio test. The numerator is clamped at zero so a slightly
        // negative basic value can never produce a negative ratio that
        // outranks the whole tie cluster on noise alone.
        let mut leave: Option<(usize, T)> = None;
        for r in 0..tab.len() {
            let a = tab[r][jcol];
            if a > piv_tol {
                let ratio = tab[r][rhs].max(T::zero()) / a;
                let take = match leave {
                    None => true,
                    Some((lr, lratio)) => {
                        let band = prec::<T>(1e-12) * (T::one() + lratio.abs());
                        if ratio < lratio - band {
                            true
                        } else if (ratio - lratio).abs() <= band {
                            if bland {
                                basis[r] < basis[lr]
                            } else {
                                let al = tab[lr][jcol];
                                a > al || (a == al && basis[r] < basis[lr])
                            }
                        } else {
                            false
                        }
                    }
                };
                if take {
                    leave = Some((r, ratio));
                }
            }
        }
        let Some((row, ratio)) = leave else {
            return Err(Error::Solver("unbounded pivot column".into()));
        };

        if ratio.abs() <= prec::<T>(1e-12) {
            degenerate_run += 1;
            if degenerate_run > 40 && !bland {
                bland = true;
                z = price_out(tab, basis, cost, width);
            }
        } else {
            degenerate_run = 0;
            bland = false;
        }

        pivot(tab, row, jcol, width);
        let f = z[jcol];
        if f != T::zero() {
            for j in 0..width {
                let delta = f * tab[row][j];
                z[j] -= delta;
            }
        }
        basis[row] = jcol;
    }
    Err(Error::Solver("pivot limit exceeded".into()))
}

fn pivot<T: Scalar>(tab: &mut [Vec<T>], prow: usize, pcol: usize, width: usize) {
    let inv = T::one() / tab[prow][pcol];
    for j in 0..width {
        tab[prow][j] *= inv;
    }
    tab[prow][pcol] = T::one();
    for r in 0..tab.len() {
        if r != prow {
            let f = tab[r][pcol];
            if f != T::zero() {
                for j in 0..width {
                    let delta = f * tab[prow][j];
                    tab[r][j] -= delta;
                }
                tab[r][pcol] = T::zero();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_energy_matrix, EnergyModel};
    use crate::Point;

    fn chain() -> NetworkInstance<f64> {
        NetworkInstance {
            collectors: vec![Point::new(0.0, 0.0)],
            sensors: vec![Point::new(1.0, 0.0), Point::new(2.0, 0.0)],
            data: vec![1.0, 1.0],
            energy_model: EnergyModel::power(1.0, 2.0),
        }
    }

    #[test]
    fn single_sensor_direct() {
        let inst: NetworkInstance<f64> = NetworkInstance {
            collectors: vec![Point::new(0.0, 0.0)],
            sensors: vec![Point::new(3.0, 0.0)],
            data: vec![5.0],
            energy_model: EnergyModel::power(1.0, 2.0),
        };
        let e = build_energy_matrix(&inst).unwrap();
        let s = solve_max_lifetime(&inst, &e).unwrap();
        assert!((s.objective - 45.0).abs() < 1e-9);
        assert!((s.flow.get(1, 0) - 5.0).abs() < 1e-9);
        assert!((s.collector_intake[0] - 5.0).abs() < 1e-9);
    }

    #[test]
    fn chain_relays_through_inner_sensor() {
        let inst = chain();
        let e = build_energy_matrix(&inst).unwrap();
        let s = solve_max_lifetime(&inst, &e).unwrap();
        assert!((s.objective - 1.75).abs() < 1e-9, "objective {}", s.objective);
        assert!((s.sensor_energies[1] - 1.75).abs() < 1e-9);
        assert!((s.sensor_energies[2] - 1.75).abs() < 1e-9);
        // The outer sensor relays 3/4 and sends 1/4 direct.
        assert!((s.flow.get(2, 1) - 0.75).abs() < 1e-9);
        assert!((s.flow.get(2, 0) - 0.25).abs() < 1e-9);
        assert!((s.flow.get(1, 0) - 1.75).abs() < 1e-9);
    }

    #[test]
    fn unit_circle_sends_direct() {
        let inst: NetworkInstance<f64> = NetworkInstance {
            collectors: vec![Point::new(0.0, 0.0)],
            sensors: vec![
                Point::new(1.0, 0.0),
                Point::new(0.0, 1.0),
                Point::new(-1.0, 0.0),
                Point::new(0.0, -1.0),
            ],
            data: vec![1.0; 4],
            energy_model: EnergyModel::power(1.0, 2.0),
        };
        let e = build_energy_matrix(&inst).unwrap();
        let s = solve_max_lifetime(&inst, &e).unwrap();
        assert!((s.objective - 1.0).abs() < 1e-9);
        for i in 1..=4 {
            assert!((s.flow.get(i, 0) - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn no_collectors_is_infeasible() {
        let inst: NetworkInstance<f64> = NetworkInstance {
            collectors: vec![],
            sensors: vec![Point::new(1.0, 0.0)],
            data: vec![1.0],
            energy_model: EnergyModel::power(1.0, 2.0),
        };
        let e = EnergyMatrix { entries: vec![vec![0.0]] };
        let err = solve_max_lifetime(&inst, &e).unwrap_err();
        assert_eq!(err.to_string(), "infeasible: no sink");
    }

    #[test]
    fn feasibility_invariants() {
        let inst = chain();
        let e = build_energy_matrix(&inst).unwrap();
        let s = solve_max_lifetime(&inst, &e).unwrap();
        let res = conservation_residuals(&s.flow, &inst);
        let tol = eps_feas(&inst);
        for h in res {
            assert!(h.abs() <= tol, "residual {h}");
        }
        for i in 0..inst.k() {
            for j in 0..inst.len() {
                assert_eq!(s.flow.get(i, j), 0.0);
            }
        }
        let total_in: f64 = s.collector_intake.iter().sum();
        let total_q: f64 = inst.data.iter().sum();
        assert!((total_in - total_q).abs() <= tol);
    }

    #[test]
    fn homogeneous_in_data_and_energy() {
        let inst = chain();
        let e = build_energy_matrix(&inst).unwrap();
        let base = solve_max_lifetime(&inst, &e).unwrap();

        let mut scaled_q = inst.clone();
        for q in &mut scaled_q.data {
            *q *= 3.0;
        }
        let s1 = solve_max_lifetime(&scaled_q, &e).unwrap();
        assert!((s1.objective - 3.0 * base.objective).abs() <= 1e-9 * (1.0 + s1.objective));

        let mut e2 = e.clone();
        for row in &mut e2.entries {
            for v in row {
                *v *= 0.5;
            }
        }
        let s2 = solve_max_lifetime(&inst, &e2).unwrap();
        assert!((s2.objective - 0.5 * base.objective).abs() <= 1e-9 * (1.0 + s2.objective));
    }

    #[test]
    fn zero_data_gives_unbounded_lifetime() {
        let mut inst = chain();
        inst.data = vec![0.0, 0.0];
        let e = build_energy_matrix(&inst).unwrap();
        let s = solve_max_lifetime(&inst, &e).unwrap();
        assert_eq!(s.objective, 0.0);
        assert_eq!(lifetime_cycles(10.0, &s).unwrap(), Lifetime::Unbounded);
    }

    #[test]
    fn lifetime_floor() {
        let inst = chain();
        let e = build_energy_matrix(&inst).unwrap();
        let s = solve_max_lifetime(&inst, &e).unwrap();
        assert_eq!(lifetime_cycles(10.0, &s).unwrap(), Lifetime::Cycles(5));
        assert_eq!(lifetime_cycles(1.75, &s).unwrap(), Lifetime::Cycles(1));
        assert!(lifetime_cycles(-1.0, &s).is_err());
    }

    #[test]
    fn sensor_energy_accumulation() {
        let inst = chain();
        let e = build_energy_matrix(&inst).unwrap();
        let mut q = FlowMatrix::zeros(3);
        q.entries[2][0] = 5.0;
        let en = sensor_energies(&q, &e);
        assert_eq!(en, vec![0.0, 0.0, 20.0]);
        let zero = sensor_energies(&FlowMatrix::zeros(3), &e);
        assert!(zero.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn deterministic_repeat() {
        let inst: NetworkInstance<f64> = NetworkInstance {
            collectors: vec![Point::new(0.1, -0.2)],
            sensors: vec![
                Point::new(1.0, 0.4),
                Point::new(-0.7, 0.8),
                Point::new(0.5, -1.1),
                Point::new(1.4, 1.3),
            ],
            data: vec![1.0, 0.5, 2.0, 0.25],
            energy_model: EnergyModel { terms: vec![(1.0, 2.0), (0.2, 1.0)] },
        };
        let e = build_energy_matrix(&inst).unwrap();
        let a = solve_max_lifetime(&inst, &e).unwrap();
        let b = solve_max_lifetime(&inst, &e).unwrap();
        assert_eq!(a.objective.to_bits(), b.objective.to_bits());
        for i in 0..inst.len() {
            for j in 0..inst.len() {
                assert_eq!(a.flow.get(i, j).to_bits(), b.flow.get(i, j).to_bits());
            }
        }
    }
}
