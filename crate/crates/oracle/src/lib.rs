//! Reference solvers for the max-lifetime routing problem, used only to
//! cross-check the production solver in tests.
//!
//! Both oracles rebuild the linear program from raw inputs (collector count,
//! cost matrix, per-sensor data) and share no code with the main crate:
//!
//! * [`min_max_energy_vertices`] enumerates every basic solution of the
//!   standard-form LP and keeps the best feasible one. Exponential, only
//!   usable for tiny networks, but about as assumption-free as it gets.
//! * [`min_max_energy_exact`] runs a textbook two-phase simplex in exact
//!   rational arithmetic (Bland's rule, no tolerances anywhere), so the
//!   returned optimum is the true optimum of the float-specified LP.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The LP in standard equality form `A x = b`, `x >= 0`, minimize `c . x`.
///
/// Column layout: all routing variables `q[i][j]` (sensor `i` major, target
/// `j` minor, `j != i`), then the epigraph variable `t`, then one slack per
/// energy row.
struct StandardLp {
    rows: Vec<Vec<f64>>,
    rhs: Vec<f64>,
    cost: Vec<f64>,
    t_col: usize,
}

fn build_lp(k: usize, energy: &[Vec<f64>], data: &[f64]) -> StandardLp {
    let n_total = energy.len();
    let n_sensors = n_total - k;
    assert!(k >= 1, "oracle needs at least one collector");
    assert_eq!(data.len(), n_sensors);

    // q-column index for (sensor, target).
    let qcol = |i: usize, j: usize| -> usize {
        debug_assert!(i >= k && j != i);
        let local = if j < i { j } else { j - 1 };
        (i - k) * (n_total - 1) + local
    };
    let nq = n_sensors * (n_total - 1);
    let t_col = nq;
    let n_cols = nq + 1 + n_sensors;

    let mut rows = Vec::new();
    let mut rhs = Vec::new();

    // Energy rows: sum_j E[i][j] q[i][j] - t + s_i = 0.
    for (si, i) in (k..n_total).enumerate() {
        let mut row = vec![0.0; n_cols];
        for j in 0..n_total {
            if j != i {
                row[qcol(i, j)] = energy[i][j];
            }
        }
        row[t_col] = -1.0;
        row[nq + 1 + si] = 1.0;
        rows.push(row);
        rhs.push(0.0);
    }
    // Conservation rows: sum_j q[i][j] - sum_{j sensor} q[j][i] = Q_i.
    for (si, i) in (k..n_total).enumerate() {
        let mut row = vec![0.0; n_cols];
        for j in 0..n_total {
            if j != i {
                row[qcol(i, j)] = 1.0;
            }
        }
        for j in k..n_total {
            if j != i {
                row[qcol(j, i)] -= 1.0;
            }
        }
        rows.push(row);
        rhs.push(data[si]);
    }

    let mut cost = vec![0.0; n_cols];
    cost[t_col] = 1.0;
    StandardLp { rows, rhs, cost, t_col }
}

/// Number of basic solutions `C(n_cols, m)` the vertex oracle would visit,
/// saturating at `u64::MAX`.
pub fn vertex_basis_count(k: usize, n_total: usize) -> u64 {
    let n_sensors = n_total - k;
    let n_cols = n_sensors * (n_total - 1) + 1 + n_sensors;
    let m = 2 * n_sensors;
    let mut acc: u64 = 1;
    for i in 0..m {
        let num = (n_cols - i) as u64;
        acc = match acc.checked_mul(num) {
            Some(v) => v / (i as u64 + 1),
            None => return u64::MAX,
        };
    }
    acc
}

/// Brute-force oracle: enumerate all column bases of the standard-form LP,
/// solve each square system, and keep the best feasible basic solution.
///
/// Returns `None` when the basis count exceeds `max_bases` or no feasible
/// basis exists.
pub fn min_max_energy_vertices(
    k: usize,
    energy: &[Vec<f64>],
    data: &[f64],
    max_bases: u64,
) -> Option<f64> {
    if vertex_basis_count(k, energy.len()) > max_bases {
        return None;
    }
    let lp = build_lp(k, energy, data);
    let m = lp.rows.len();
    let n_cols = lp.cost.len();
    let feas_tol = 1e-9 * (1.0 + lp.rhs.iter().fold(0.0f64, |a, b| a.max(b.abs())));

    let mut best: Option<f64> = None;
    let mut combo: Vec<usize> = (0..m).collect();
    loop {
        if let Some(x_basic) = solve_square(&lp.rows, &lp.rhs, &combo) {
            if x_basic.iter().all(|&v| v >= -feas_tol) {
                let t_val = combo
                    .iter()
                    .position(|&c| c == lp.t_col)
                    .map_or(0.0, |pos| x_basic[pos]);
                best = Some(match best {
                    Some(b) => b.min(t_val),
                    None => t_val,
                });
            }
        }
        // next lexicographic combination
        let mut i = m;
        loop {
            if i == 0 {
                return best;
            }
            i -= 1;
            if combo[i] != i + n_cols - m {
                break;
            }
        }
        combo[i] += 1;
        for j in i + 1..m {
            combo[j] = combo[j - 1] + 1;
        }
    }
}

/// Solve `A_B x_B = b` for the columns in `basis`. Returns `None` when the
/// basis matrix is (numerically) singular.
fn solve_square(rows: &[Vec<f64>], rhs: &[f64], basis: &[usize]) -> Option<Vec<f64>> {
    let m = rows.len();
    let mut a = vec![vec![0.0; m + 1]; m];
    for r in 0..m {
        for (c, &col) in basis.iter().enumerate() {
            a[r][c] = rows[r][col];
        }
        a[r][m] = rhs[r];
    }
    for col in 0..m {
        let mut piv = col;
        for r in col + 1..m {
            if a[r][col].abs() > a[piv][col].abs() {
                piv = r;
            }
        }
        if a[piv][col].abs() < 1e-10 {
            return None;
        }
        a.swap(col, piv);
        let inv = 1.0 / a[col][col];
        for r in 0..m {
            if r != col && a[r][col] != 0.0 {
                let f = a[r][col] * inv;
                for c in col..=m {
                    a[r][c] -= f * a[col][c];
                }
            }
        }
    }
    Some((0..m).map(|r| a[r][m] / a[r][r]).collect())
}

type Rat = BigRational;

fn rat(x: f64) -> Rat {
    BigRational::from_float(x).expect("finite input")
}

/// Exact oracle: two-phase simplex over arbitrary-precision rationals with
/// Bland's rule. Every comparison is exact, so the result is the true
/// optimum of the LP whose coefficients are the given floats.
pub fn min_max_energy_exact(k: usize, energy: &[Vec<f64>], data: &[f64]) -> Rat {
    let lp = build_lp(k, energy, data);
    let m = lp.rows.len();
    let n_struct = lp.cost.len();

    // Tableau columns: structural vars, artificials (one per row), rhs.
    let n_cols = n_struct + m;
    let mut tab: Vec<Vec<Rat>> = Vec::with_capacity(m);
    for r in 0..m {
        let mut row: Vec<Rat> = Vec::with_capacity(n_cols + 1);
        for c in 0..n_struct {
            row.push(rat(lp.rows[r][c]));
        }
        for c in 0..m {
            row.push(if c == r { Rat::one() } else { Rat::zero() });
        }
        assert!(lp.rhs[r] >= 0.0);
        row.push(rat(lp.rhs[r]));
        tab.push(row);
    }
    let mut basis: Vec<usize> = (n_struct..n_struct + m).collect();

    // Phase 1: minimize the sum of artificials.
    let mut cost1 = vec![Rat::zero(); n_cols];
    for c in n_struct..n_cols {
        cost1[c] = Rat::one();
    }
    let obj1 = simplex_bland(&mut tab, &mut basis, &cost1, n_cols);
    assert!(obj1.is_zero(), "reference LP should always be feasible");

    // Drive any leftover artificials out of the basis; drop redundant rows.
    let mut r = 0;
    while r < tab.len() {
        if basis[r] >= n_struct {
            if let Some(c) = (0..n_struct).find(|&c| !tab[r][c].is_zero()) {
                pivot(&mut tab, r, c, n_cols);
                basis[r] = c;
                r += 1;
            } else {
                tab.remove(r);
                basis.remove(r);
            }
        } else {
            r += 1;
        }
    }

    // Phase 2: minimize t, artificials barred by an effectively infinite cost.
    let mut cost2: Vec<Rat> = lp.cost.iter().map(|&c| rat(c)).collect();
    cost2.resize(n_cols, Rat::from(BigInt::from(u64::MAX)));
    simplex_bland(&mut tab, &mut basis, &cost2, n_cols)
}

/// Run Bland's-rule simplex to optimality; returns the objective value.
fn simplex_bland(
    tab: &mut Vec<Vec<Rat>>,
    basis: &mut Vec<usize>,
    cost: &[Rat],
    n_cols: usize,
) -> Rat {
    loop {
        // Reduced costs: c_j - c_B . B^-1 A_j, computed from the tableau.
        let mut entering = None;
        for j in 0..n_cols {
            if basis.contains(&j) {
                continue;
            }
            let mut red = cost[j].clone();
            for (r, &b) in basis.iter().enumerate() {
                if !tab[r][j].is_zero() {
                    red -= &cost[b] * &tab[r][j];
                }
            }
            if red.is_negative() {
                entering = Some(j);
                break;
            }
        }
        let Some(j) = entering else {
            let mut obj = Rat::zero();
            for (r, &b) in basis.iter().enumerate() {
                obj += &cost[b] * &tab[r][n_cols];
            }
            return obj;
        };
        // Ratio test, ties broken by smallest basic variable index.
        let mut leave: Option<(usize, Rat)> = None;
        for r in 0..tab.len() {
            if tab[r][j].is_positive() {
                let ratio = &tab[r][n_cols] / &tab[r][j];
                let better = match &leave {
                    None => true,
                    Some((lr, lratio)) => {
                        ratio < *lratio || (ratio == *lratio && basis[r] < basis[*lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let (r, _) = leave.expect("epigraph LP is bounded");
        pivot(tab, r, j, n_cols);
        basis[r] = j;
    }
}

fn pivot(tab: &mut [Vec<Rat>], pr: usize, pc: usize, n_cols: usize) {
    let inv = tab[pr][pc].recip();
    for c in 0..=n_cols {
        tab[pr][c] *= &inv;
    }
    for r in 0..tab.len() {
        if r != pr && !tab[r][pc].is_zero() {
            let f = tab[r][pc].clone();
            for c in 0..=n_cols {
                let delta = &f * &tab[pr][c];
                tab[r][c] -= delta;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn chain() -> (usize, Vec<Vec<f64>>, Vec<f64>) {
        // Collector at 0, sensors at 1 and 2 on a line, cost = distance^2.
        let pts = [0.0f64, 1.0, 2.0];
        let mut e = vec![vec![0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    e[i][j] = (pts[i] - pts[j]).powi(2);
                }
            }
        }
        (1, e, vec![1.0, 1.0])
    }

    #[test]
    fn chain_exact_is_seven_fourths() {
        let (k, e, q) = chain();
        let opt = min_max_energy_exact(k, &e, &q);
        assert_eq!(opt, Rat::new(BigInt::from(7), BigInt::from(4)));
    }

    #[test]
    fn chain_vertex_enumeration_matches_exact() {
        let (k, e, q) = chain();
        let v = min_max_energy_vertices(k, &e, &q, 1_000_000).unwrap();
        assert!((v - 1.75).abs() < 1e-9, "got {v}");
    }

    #[test]
    fn single_sensor_direct_route() {
        // Collector at origin, one sensor at distance 3, Q = 5, cost d^2.
        let e = vec![vec![0.0, 9.0], vec![9.0, 0.0]];
        let q = vec![5.0];
        let opt = min_max_energy_exact(1, &e, &q);
        assert_eq!(opt.to_f64().unwrap(), 45.0);
        let v = min_max_energy_vertices(1, &e, &q, 1000).unwrap();
        assert!((v - 45.0).abs() < 1e-12);
    }

    #[test]
    fn two_collectors_sensor_between() {
        // Sensor halfway between two collectors: split or send either way,
        // optimum is Q * d^2 with d = 1.
        let e = vec![
            vec![0.0, 4.0, 1.0],
            vec![4.0, 0.0, 1.0],
            vec![1.0, 1.0, 0.0],
        ];
        let q = vec![2.0];
        let opt = min_max_energy_exact(2, &e, &q).to_f64().unwrap();
        assert!((opt - 2.0).abs() < 1e-12);
        let v = min_max_energy_vertices(2, &e, &q, 1000).unwrap();
        assert!((v - 2.0).abs() < 1e-12);
    }

    #[test]
    fn zero_data_gives_zero_objective() {
        let (k, e, _) = chain();
        let opt = min_max_energy_exact(k, &e, &[0.0, 0.0]);
        assert!(opt.is_zero());
    }
}
