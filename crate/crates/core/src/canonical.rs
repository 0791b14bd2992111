//! Canonical forms for optimal flows: group averaging, invariance checks,
//! two-cycle cancellation, and intra-orbit flow removal.

use crate::error::{Error, Result};
use crate::scalar::{c, Scalar};
use crate::solver::FlowMatrix;
use crate::symmetry::{GroupElement, OrbitPartition, SymmetryGroup};

/// How far a flow is from being group-invariant.
#[derive(Clone, Copy, Debug)]
pub struct InvarianceReport<T> {
    /// `max |q[g(i)][g(j)] - q[i][j]|` over all elements and cells.
    pub max_violation: T,
    pub is_invariant: bool,
}

/// Relabel a flow by a group element: the result `r` satisfies
/// `r[g(i)][g(j)] = q[i][j]`.
pub fn conjugate_flow<T: Scalar>(g: &GroupElement<T>, q: &FlowMatrix<T>) -> Result<FlowMatrix<T>> {
    let n = q.dim();
    if g.perm.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "permutation over {} nodes applied to a {n}x{n} flow",
            g.perm.len()
        )));
    }
    let mut out = FlowMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            out.entries[g.perm[i]][g.perm[j]] = q.entries[i][j];
        }
    }
    Ok(out)
}

/// The uniform group average of a flow.
///
/// Computed per cell orbit: every cell in the orbit of `(i, j)` receives
/// the mean of the flow over the orbit's distinct cells, which equals the
/// uniform average of the conjugates (each distinct cell appears in the
/// conjugate sum with the same multiplicity, the cell stabilizer order).
/// Writing one value per orbit makes the output exactly invariant, and a
/// bitwise-equal orbit is passed through untouched, so averaging is a
/// bitwise fixed point on its own output.
pub fn symmetrize<T: Scalar>(q0: &FlowMatrix<T>, group: &SymmetryGroup<T>) -> FlowMatrix<T> {
    let n = q0.dim();
    assert_eq!(
        group.elements.first().map_or(n, |g| g.perm.len()),
        n,
        "group and flow describe different node counts"
    );
    let mut out = FlowMatrix::zeros(n);
    let mut done = vec![vec![false; n]; n];
    let mut cells: Vec<(usize, usize)> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j || done[i][j] {
                continue;
            }
            cells.clear();
            for g in &group.elements {
                let cell = (g.perm[i], g.perm[j]);
                if !done[cell.0][cell.1] {
                    done[cell.0][cell.1] = true;
                    cells.push(cell);
                }
            }
            let first = q0.entries[cells[0].0][cells[0].1];
            let value = if cells.iter().all(|&(a, b)| q0.entries[a][b] == first) {
                first
            } else {
                let sum: T = cells.iter().map(|&(a, b)| q0.entries[a][b]).sum();
                sum / c::<T>(cells.len() as f64)
            };
            for &(a, b) in &cells {
                out.entries[a][b] = value;
            }
        }
    }
    out
}

/// Measure the worst invariance violation of a flow under a group.
pub fn check_invariance<T: Scalar>(
    q: &FlowMatrix<T>,
    group: &SymmetryGroup<T>,
    tol: T,
) -> InvarianceReport<T> {
    let n = q.dim();
    let mut max_violation = T::zero();
    for g in &group.elements {
        for i in 0..n {
            for j in 0..n {
                let d = (q.entries[g.perm[i]][g.perm[j]] - q.entries[i][j]).abs();
                if d > max_violation {
                    max_violation = d;
                }
            }
        }
    }
    InvarianceReport { max_violation, is_invariant: max_violation <= tol }
}

/// Cancel opposing flows: for every unordered pair, subtract the smaller
/// of `q[i][j]` and `q[j][i]` from both.
///
/// The two entries of a pair contribute to the conservation residual only
/// through their difference, and IEEE subtraction gives the same `a - b`
/// whether computed before or after replacing `(a, b)` by
/// `(a - b, 0)`, so residuals are preserved bit for bit.
pub fn cancel_pairwise<T: Scalar>(q: &FlowMatrix<T>) -> FlowMatrix<T> {
    let n = q.dim();
    let mut out = q.clone();
    for i in 0..n {
        for j in (i + 1)..n {
            let a = out.entries[i][j];
            let b = out.entries[j][i];
            if a > T::zero() && b > T::zero() {
                if a >= b {
                    out.entries[i][j] = a - b;
                    out.entries[j][i] = T::zero();
                } else {
                    out.entries[i][j] = T::zero();
                    out.entries[j][i] = b - a;
                }
            }
        }
    }
    out
}

/// Zero all flow between two sensors of the same orbit.
///
/// For an invariant flow the intra-orbit net at every node is the same
/// across the orbit and the orbit total is zero, so removal preserves
/// conservation; it can only lower sensor energies.
pub fn remove_intra_orbit<T: Scalar>(
    q: &FlowMatrix<T>,
    partition: &OrbitPartition,
    group: &SymmetryGroup<T>,
) -> Result<FlowMatrix<T>> {
    let report = check_invariance(q, group, c::<T>(1e-9));
    if !report.is_invariant {
        return Err(Error::RequiresInvariantFlow(format!("{}", report.max_violation)));
    }
    let n = q.dim();
    let mut out = q.clone();
    for i in 0..n {
        for j in 0..n {
            if i != j && partition.orbit_of[i] == partition.orbit_of[j] {
                out.entries[i][j] = T::zero();
            }
        }
    }
    Ok(out)
}
