//! Construction of networks with designed cyclic or dihedral symmetry by
//! replicating seed nodes over a group.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::geometry::{normalize_angle, polar_angle, Isometry, Point};
use crate::model::{validate_instance, EnergyModel, NetworkInstance};
use crate::scalar::{c, Scalar, EPS_GEO};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    Cyclic(usize),
    Dihedral(usize),
}

impl GenKind {
    pub fn fold(self) -> usize {
        match self {
            GenKind::Cyclic(m) | GenKind::Dihedral(m) => m,
        }
    }

    pub fn designed_order(self) -> usize {
        match self {
            GenKind::Cyclic(m) => m,
            GenKind::Dihedral(m) => 2 * m,
        }
    }
}

/// One node to be replicated over the group. The point must lie strictly
/// inside the generating wedge: angle in `(0, 2π/M)` for cyclic networks
/// and `(0, π/M)` for dihedral ones, radius positive. Collectors on the
/// wedge borders are requested through the dedicated border lists instead.
#[derive(Clone, Copy, Debug)]
pub struct SeedNode<T> {
    pub point: Point<T>,
    pub collector: bool,
    /// Data volume for sensor seeds; ignored for collectors.
    pub data: T,
}

impl<T: Scalar> SeedNode<T> {
    pub fn sensor(point: Point<T>, data: T) -> Self {
        SeedNode { point, collector: false, data }
    }

    pub fn collector(point: Point<T>) -> Self {
        SeedNode { point, collector: true, data: T::zero() }
    }
}

/// Recipe for a symmetric network.
#[derive(Clone, Debug)]
pub struct GeneratorSpec<T> {
    pub kind: GenKind,
    pub seeds: Vec<SeedNode<T>>,
    pub center_collector: bool,
    /// Collector radii on the half-line at angle 0 (dihedral mirror).
    pub border_c0: Vec<T>,
    /// Collector radii on the half-line at angle π/M (dihedral mirror).
    pub border_c1: Vec<T>,
    pub energy_model: EnergyModel<T>,
    /// Recorded for reproducibility when seeds were drawn randomly by a
    /// front-end; generation itself is deterministic.
    pub rng_seed: u64,
}

/// Build the network: seeds are replicated over the designed group, border
/// collectors over the rotations, and nodes are ordered deterministically
/// (collectors first; orbit-major in seed order, position-minor by angle).
pub fn generate<T: Scalar>(spec: &GeneratorSpec<T>) -> Result<NetworkInstance<T>> {
    let m = spec.kind.fold();
    if m < 2 {
        return Err(Error::InvalidInstance("fold must be at least 2".into()));
    }
    let alpha = c::<T>(TAU) / c::<T>(m as f64);
    let wedge_top = match spec.kind {
        GenKind::Cyclic(_) => alpha,
        GenKind::Dihedral(_) => c::<T>(PI) / c::<T>(m as f64),
    };
    let margin = c::<T>(EPS_GEO);
    for (idx, seed) in spec.seeds.iter().enumerate() {
        let r = seed.point.norm();
        if !(r > margin) {
            return Err(Error::SeedOnBoundary(idx));
        }
        let theta = normalize_angle(polar_angle(seed.point));
        if theta <= margin || theta >= wedge_top - margin {
            return Err(Error::SeedOnBoundary(idx));
        }
    }

    let rotation = |k: usize| Isometry::rotation(Point::origin(), c::<T>(k as f64) * alpha);
    let mirror0 = Isometry::reflection(Point::origin(), T::zero());

    let mut collectors: Vec<Point<T>> = Vec::new();
    let mut sensors: Vec<Point<T>> = Vec::new();
    let mut data: Vec<T> = Vec::new();

    if spec.center_collector {
        collectors.push(Point::origin());
    }
    for &r in &spec.border_c0 {
        collectors.extend(orbit_points(&(0..m).map(|k| rotation(k).apply(Point::new(r, T::zero()))).collect::<Vec<_>>()));
    }
    if !spec.border_c1.is_empty() && !matches!(spec.kind, GenKind::Dihedral(_)) {
        return Err(Error::InvalidInstance("second border line exists only for dihedral networks".into()));
    }
    for &r in &spec.border_c1 {
        let half = wedge_top;
        let base = Point::new(r * half.cos(), r * half.sin());
        collectors.extend(orbit_points(&(0..m).map(|k| rotation(k).apply(base)).collect::<Vec<_>>()));
    }

    for seed in &spec.seeds {
        let mut images: Vec<Point<T>> = Vec::new();
        for k in 0..m {
            images.push(rotation(k).apply(seed.point));
        }
        if matches!(spec.kind, GenKind::Dihedral(_)) {
            let mirrored = mirror0.apply(seed.point);
            for k in 0..m {
                images.push(rotation(k).apply(mirrored));
            }
        }
        let images = orbit_points(&images);
        if seed.collector {
            collectors.extend(images);
        } else {
            data.extend(std::iter::repeat(seed.data).take(images.len()));
            sensors.extend(images);
        }
    }

    let instance = NetworkInstance { collectors, sensors, data, energy_model: spec.energy_model.clone() };
    let problems = validate_instance(&instance);
    if let Some(d) = problems.first() {
        return Err(Error::InvalidInstance(d.message.clone()));
    }
    Ok(instance)
}

/// Sort one orbit's images anticlockwise so position labels match the
/// detected partition.
fn orbit_points<T: Scalar>(points: &[Point<T>]) -> Vec<Point<T>> {
    let mut out = points.to_vec();
    out.sort_by(|a, b| {
        (polar_angle(*a), a.x, a.y).partial_cmp(&(polar_angle(*b), b.x, b.y)).expect("finite angles")
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::{default_eps_sym, detect_symmetry_group, orbits};

    fn polar(r: f64, theta: f64) -> Point<f64> {
        Point::new(r * theta.cos(), r * theta.sin())
    }

    fn detect_order(inst: &NetworkInstance<f64>) -> usize {
        detect_symmetry_group(inst, default_eps_sym(inst)).order()
    }

    #[test]
    fn cyclic_four_two_rings() {
        let spec = GeneratorSpec {
            kind: GenKind::Cyclic(4),
            seeds: vec![SeedNode::sensor(polar(1.0, 0.3), 1.0), SeedNode::sensor(polar(2.0, 0.3), 1.0)],
            center_collector: true,
            border_c0: vec![],
            border_c1: vec![],
            energy_model: EnergyModel::power(1.0, 2.0),
            rng_seed: 0,
        };
        let inst = generate(&spec).unwrap();
        assert_eq!(inst.k(), 1);
        assert_eq!(inst.n(), 8);
        assert!(validate_instance(&inst).is_empty());
        assert_eq!(detect_order(&inst) % 4, 0);
    }

    #[test]
    fn dihedral_with_borders_matches_designed_layout() {
        let mut seeds: Vec<SeedNode<f64>> = (0..7)
            .map(|i| {
                let theta = PI / 4.0 * (0.15 + 0.1 * i as f64);
                SeedNode::sensor(polar(1.0 + 0.35 * i as f64, theta), 1.0)
            })
            .collect();
        seeds.push(SeedNode::collector(polar(1.5, PI / 8.0)));
        let spec = GeneratorSpec {
            kind: GenKind::Dihedral(4),
            seeds,
            center_collector: true,
            border_c0: vec![2.0],
            border_c1: vec![3.0],
            energy_model: EnergyModel::power(1.0, 2.0),
            rng_seed: 0,
        };
        let inst = generate(&spec).unwrap();
        assert_eq!(inst.k(), 1 + 4 + 4 + 8);
        assert_eq!(inst.n(), 7 * 8);
        assert!(validate_instance(&inst).is_empty());
        assert_eq!(detect_order(&inst) % 8, 0);
    }

    #[test]
    fn cyclic_two_minimal() {
        let spec = GeneratorSpec {
            kind: GenKind::Cyclic(2),
            seeds: vec![SeedNode::sensor(polar(1.0, 1.0), 2.5)],
            center_collector: true,
            border_c0: vec![],
            border_c1: vec![],
            energy_model: EnergyModel::power(1.0, 2.0),
            rng_seed: 0,
        };
        let inst = generate(&spec).unwrap();
        assert_eq!((inst.k(), inst.n()), (1, 2));
        assert_eq!(inst.data, vec![2.5, 2.5]);
        assert_eq!(detect_order(&inst) % 2, 0);
    }

    #[test]
    fn seed_on_mirror_rejected() {
        let spec = GeneratorSpec {
            kind: GenKind::Dihedral(4),
            seeds: vec![SeedNode::sensor(Point::new(1.0, 0.0), 1.0)],
            center_collector: true,
            border_c0: vec![],
            border_c1: vec![],
            energy_model: EnergyModel::power(1.0, 2.0),
            rng_seed: 0,
        };
        assert!(matches!(generate(&spec), Err(Error::SeedOnBoundary(0))));
    }

    #[test]
    fn seed_outside_wedge_rejected() {
        let spec = GeneratorSpec {
            kind: GenKind::Cyclic(4),
            seeds: vec![SeedNode::sensor(polar(1.0, 2.0), 1.0)],
            center_collector: true,
            border_c0: vec![],
            border_c1: vec![],
            energy_model: EnergyModel::power(1.0, 2.0),
            rng_seed: 0,
        };
        assert!(matches!(generate(&spec), Err(Error::SeedOnBoundary(0))));
    }

    #[test]
    fn seed_at_center_rejected() {
        let spec = GeneratorSpec {
            kind: GenKind::Cyclic(3),
            seeds: vec![SeedNode::sensor(Point::origin(), 1.0)],
            center_collector: true,
            border_c0: vec![],
            border_c1: vec![],
            energy_model: EnergyModel::power(1.0, 2.0),
            rng_seed: 0,
        };
        assert!(matches!(generate(&spec), Err(Error::SeedOnBoundary(0))));
    }

    #[test]
    fn no_collectors_rejected() {
        let spec = GeneratorSpec {
            kind: GenKind::Cyclic(3),
            seeds: vec![SeedNode::sensor(polar(1.0, 0.5), 1.0)],
            center_collector: false,
            border_c0: vec![],
            border_c1: vec![],
            energy_model: EnergyModel::power(1.0, 2.0),
            rng_seed: 0,
        };
        assert!(matches!(generate(&spec), Err(Error::InvalidInstance(_))));
    }

    #[test]
    fn designed_group_divides_detected_group() {
        for m in 2..=7 {
            let spec = GeneratorSpec {
                kind: GenKind::Cyclic(m),
                seeds: vec![
                    SeedNode::sensor(polar(1.0, 0.7 * TAU / m as f64), 1.0),
                    SeedNode::sensor(polar(1.9, 0.31 * TAU / m as f64), 2.0),
                ],
                center_collector: true,
                border_c0: vec![],
                border_c1: vec![],
                energy_model: EnergyModel::power(1.0, 2.0),
                rng_seed: 0,
            };
            let inst = generate(&spec).unwrap();
            let order = detect_order(&inst);
            assert_eq!(order % m, 0, "cyclic({m}) network detected order {order}");
        }
        for m in 2..=5 {
            let spec = GeneratorSpec {
                kind: GenKind::Dihedral(m),
                seeds: vec![SeedNode::sensor(polar(1.0, 0.4 * PI / m as f64), 1.0)],
                center_collector: true,
                border_c0: vec![2.0],
                border_c1: vec![],
                energy_model: EnergyModel::power(1.0, 2.0),
                rng_seed: 0,
            };
            let inst = generate(&spec).unwrap();
            let order = detect_order(&inst);
            assert_eq!(order % (2 * m), 0, "dihedral({m}) network detected order {order}");
        }
    }

    #[test]
    fn ordering_matches_orbit_positions() {
        let spec = GeneratorSpec {
            kind: GenKind::Cyclic(5),
            seeds: vec![SeedNode::sensor(polar(1.3, 0.5), 1.0), SeedNode::sensor(polar(2.1, 0.9), 1.0)],
            center_collector: true,
            border_c0: vec![],
            border_c1: vec![],
            energy_model: EnergyModel::power(1.0, 2.0),
            rng_seed: 0,
        };
        let inst = generate(&spec).unwrap();
        let g = detect_symmetry_group(&inst, default_eps_sym(&inst));
        let p = orbits(&g, &inst);
        // Orbit-major ordering: node index order equals (orbit, position).
        let labels: Vec<(usize, usize)> = (0..inst.len()).map(|i| (p.orbit_of[i], p.position[i])).collect();
        assert!(labels.windows(2).all(|w| w[0] < w[1]), "labels not ordered: {labels:?}");
        for members in &p.orbits {
            for w in members.windows(2) {
                assert_eq!(w[0] + 1, w[1], "orbit members contiguous and angle-ordered");
            }
        }
    }
}
