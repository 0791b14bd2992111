//! Network instances, the distance-based energy model family
//! `E(d) = Σ_n λ_n d^{a_n}`, and instance validation.
//!
//! Node indexing is 0-based throughout: collectors occupy indices
//! `0..k`, sensors `k..k+n`.

use crate::error::{Error, Result};
use crate::geometry::{distance, Point};
use crate::scalar::{c, Scalar, EPS_GEO};

/// Energy per data unit as a sum of powers of distance. Weights and
/// exponents are restricted to be nonnegative so the matrix is
/// distance-monotone.
#[derive(Clone, Debug)]
pub struct EnergyModel<T> {
    /// `(λ_n, a_n)` pairs.
    pub terms: Vec<(T, T)>,
}

impl<T: Scalar> EnergyModel<T> {
    /// Single-term model `λ d^a`.
    pub fn power(lambda: T, a: T) -> Self {
        EnergyModel { terms: vec![(lambda, a)] }
    }

    pub fn validate(&self) -> Result<()> {
        if self.terms.is_empty() {
            return Err(Error::InvalidEnergyModel("no terms".into()));
        }
        for (i, &(l, a)) in self.terms.iter().enumerate() {
            if !l.is_finite() || l < T::zero() {
                return Err(Error::InvalidEnergyModel(format!("negative or non-finite weight in term {i}")));
            }
            if !a.is_finite() || a < T::zero() {
                return Err(Error::InvalidEnergyModel(format!("negative or non-finite exponent in term {i}")));
            }
        }
        if self.terms.iter().all(|&(l, _)| l == T::zero()) {
            return Err(Error::InvalidEnergyModel("all weights are zero".into()));
        }
        Ok(())
    }

    /// Evaluate at distance `d`.
    pub fn eval(&self, d: T) -> T {
        self.terms.iter().map(|&(l, a)| l * d.powf(a)).sum()
    }
}

/// A labeled planar network: `k` collectors followed by `n` sensors, with
/// per-sensor data volumes and the energy model.
#[derive(Clone, Debug)]
pub struct NetworkInstance<T> {
    pub collectors: Vec<Point<T>>,
    pub sensors: Vec<Point<T>>,
    /// Data generated per cycle by each sensor, indexed like `sensors`.
    pub data: Vec<T>,
    pub energy_model: EnergyModel<T>,
}

impl<T: Scalar> NetworkInstance<T> {
    pub fn k(&self) -> usize {
        self.collectors.len()
    }

    pub fn n(&self) -> usize {
        self.sensors.len()
    }

    /// Total node count `k + n`.
    pub fn len(&self) -> usize {
        self.collectors.len() + self.sensors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_collector(&self, i: usize) -> bool {
        i < self.collectors.len()
    }

    /// Node position by global index (collectors first).
    pub fn point(&self, i: usize) -> Point<T> {
        let k = self.collectors.len();
        if i < k {
            self.collectors[i]
        } else {
            self.sensors[i - k]
        }
    }

    /// Data volume of the sensor with global index `i`.
    pub fn data_of(&self, i: usize) -> T {
        self.data[i - self.collectors.len()]
    }

    pub fn centroid(&self) -> Point<T> {
        let mut sx = T::zero();
        let mut sy = T::zero();
        for i in 0..self.len() {
            let p = self.point(i);
            sx += p.x;
            sy += p.y;
        }
        let m = c::<T>(self.len() as f64);
        Point::new(sx / m, sy / m)
    }

    pub fn diameter(&self) -> T {
        let mut d = T::zero();
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                d = d.max(distance(self.point(i), self.point(j)));
            }
        }
        d
    }
}

/// Pairwise transmission costs; symmetric with zero diagonal when built
/// from an [`EnergyModel`].
#[derive(Clone, Debug)]
pub struct EnergyMatrix<T> {
    pub entries: Vec<Vec<T>>,
}

impl<T: Scalar> EnergyMatrix<T> {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.entries[i][j]
    }
}

/// Build `E_{i,j} = Σ_n λ_n d(p_i, p_j)^{a_n}` with zero diagonal.
pub fn build_energy_matrix<T: Scalar>(instance: &NetworkInstance<T>) -> Result<EnergyMatrix<T>> {
    instance.energy_model.validate()?;
    let n = instance.len();
    let mut entries = vec![vec![T::zero(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let e = instance.energy_model.eval(distance(instance.point(i), instance.point(j)));
            entries[i][j] = e;
            entries[j][i] = e;
        }
    }
    Ok(EnergyMatrix { entries })
}

/// Check that larger distances never cost less: sorting all off-diagonal
/// pairs by distance must give non-decreasing energies, with distance ties
/// requiring equal energies up to tolerance.
pub fn check_monotone<T: Scalar>(e: &EnergyMatrix<T>, instance: &NetworkInstance<T>) -> bool {
    let n = instance.len();
    if e.dim() != n {
        return false;
    }
    let mut pairs: Vec<(T, T)> = Vec::with_capacity(n * (n - 1));
    for i in 0..n {
        for j in 0..n {
            if i != j {
                pairs.push((distance(instance.point(i), instance.point(j)), e.get(i, j)));
            }
        }
    }
    pairs.sort_by(|a, b| a.partial_cmp(b).expect("finite keys"));
    for w in pairs.windows(2) {
        let (d0, e0) = w[0];
        let (d1, e1) = w[1];
        let d_tol = c::<T>(EPS_GEO) * (T::one() + d0);
        let e_tol = c::<T>(EPS_GEO) * (T::one() + e0.abs());
        if d1 - d0 <= d_tol {
            if (e1 - e0).abs() > e_tol {
                return false;
            }
        } else if e1 < e0 - e_tol {
            return false;
        }
    }
    true
}

/// One validation failure, with the node indices involved.
#[derive(Clone, Debug)]
pub struct Diagnostic {
    pub nodes: Vec<usize>,
    pub message: String,
}

/// Check all instance invariants; returns one diagnostic per violation.
pub fn validate_instance<T: Scalar>(instance: &NetworkInstance<T>) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    if instance.collectors.is_empty() {
        out.push(Diagnostic { nodes: vec![], message: "no collectors".into() });
    }
    if instance.sensors.is_empty() {
        out.push(Diagnostic { nodes: vec![], message: "no sensors".into() });
    }
    if instance.data.len() != instance.sensors.len() {
        out.push(Diagnostic {
            nodes: vec![],
            message: format!(
                "data length {} does not match sensor count {}",
                instance.data.len(),
                instance.sensors.len()
            ),
        });
    }
    for i in 0..instance.len() {
        if !instance.point(i).is_finite() {
            out.push(Diagnostic { nodes: vec![i], message: format!("non-finite coordinate ({i})") });
        }
    }
    let k = instance.k();
    for (s, &q) in instance.data.iter().enumerate() {
        if !q.is_finite() || q < T::zero() {
            out.push(Diagnostic {
                nodes: vec![k + s],
                message: format!("negative or non-finite data volume ({})", k + s),
            });
        }
    }
    for i in 0..instance.len() {
        for j in i + 1..instance.len() {
            let d = distance(instance.point(i), instance.point(j));
            if d <= c::<T>(EPS_GEO) * (T::one() + instance.point(i).norm()) {
                out.push(Diagnostic { nodes: vec![i, j], message: format!("coincident nodes ({i},{j})") });
            }
        }
    }
    if let Err(e) = instance.energy_model.validate() {
        out.push(Diagnostic { nodes: vec![], message: e.to_string() });
    }
    out
}
