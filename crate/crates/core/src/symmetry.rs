//! Detection of the finite isometry group of a labeled network, orbit and
//! stabilizer computation, and fundamental-region construction for both
//! the dihedral and the pure-rotation case.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::{distance, normalize_angle, polar_angle, Isometry, Point};
use crate::model::NetworkInstance;
use crate::scalar::{c, Scalar, EPS_GEO};

/// One network symmetry: an isometry together with the node relabeling it
/// induces (`g(p_i) = p_{perm[i]}`, collectors to collectors, sensors to
/// sensors).
#[derive(Clone, Debug)]
pub struct GroupElement<T> {
    pub iso: Isometry<T>,
    pub perm: Vec<usize>,
}

impl<T> GroupElement<T> {
    pub fn apply_index(&self, i: usize) -> usize {
        self.perm[i]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupKind {
    Trivial,
    /// `M` rotations.
    Cyclic(usize),
    /// `M` rotations and `M` reflections.
    Dihedral(usize),
}

impl GroupKind {
    pub fn order(self) -> usize {
        match self {
            GroupKind::Trivial => 1,
            GroupKind::Cyclic(m) => m,
            GroupKind::Dihedral(m) => 2 * m,
        }
    }
}

/// The full symmetry group of a labeled network about its centroid.
///
/// Elements are ordered rotations-first by angle, then reflections by axis
/// angle, so equal inputs give identical element lists.
#[derive(Clone, Debug)]
pub struct SymmetryGroup<T> {
    pub elements: Vec<GroupElement<T>>,
    pub kind: GroupKind,
    pub center: Point<T>,
}

impl<T: Scalar> SymmetryGroup<T> {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    /// The rotation-only subgroup (used to cross-check dihedral reductions
    /// against the pure-rotation machinery).
    pub fn rotation_subgroup(&self) -> SymmetryGroup<T> {
        let elements: Vec<GroupElement<T>> =
            self.elements.iter().filter(|g| !g.iso.is_reflection()).cloned().collect();
        let kind = if elements.len() <= 1 { GroupKind::Trivial } else { GroupKind::Cyclic(elements.len()) };
        SymmetryGroup { elements, kind, center: self.center }
    }
}

/// Default detection tolerance: `1e-9` of the network diameter.
pub fn default_eps_sym<T: Scalar>(instance: &NetworkInstance<T>) -> T {
    c::<T>(EPS_GEO) * instance.diameter()
}

/// Detect the largest subgroup of the orthogonal group about the centroid
/// whose elements permute collectors among collectors and sensors among
/// sensors, each node matching within `eps_sym`.
///
/// The trivial group is the fallback; detection never fails.
pub fn detect_symmetry_group<T: Scalar>(instance: &NetworkInstance<T>, eps_sym: T) -> SymmetryGroup<T> {
    let total = instance.len();
    let center = instance.centroid();
    let pts: Vec<Point<T>> = (0..total).map(|i| instance.point(i)).collect();
    let kinds: Vec<bool> = (0..total).map(|i| instance.is_collector(i)).collect();
    let eps = if eps_sym > T::zero() { eps_sym } else { default_eps_sym(instance) };

    // Reference class: the smallest set of same-kind nodes equidistant
    // from the center (excluding the center itself). Every symmetry maps
    // this class onto itself, so the images of one reference point
    // enumerate all candidate isometries.
    let radii: Vec<T> = pts.iter().map(|&p| distance(p, center)).collect();
    let mut by_class: Vec<(bool, Vec<usize>)> = Vec::new();
    {
        let mut order: Vec<usize> = (0..total).filter(|&i| radii[i] > eps).collect();
        order.sort_by(|&a, &b| {
            (kinds[a], radii[a], a).partial_cmp(&(kinds[b], radii[b], b)).expect("finite radii")
        });
        for i in order {
            match by_class.last_mut() {
                Some((kind, members))
                    if *kind == kinds[i] && (radii[i] - radii[*members.last().unwrap()]).abs() <= eps =>
                {
                    members.push(i)
                }
                _ => by_class.push((kinds[i], vec![i])),
            }
        }
    }
    let identity = GroupElement { iso: Isometry::identity(), perm: (0..total).collect() };
    let Some((_, class)) = by_class
        .iter()
        .min_by_key(|(_, members)| (members.len(), *members.first().unwrap()))
    else {
        return SymmetryGroup { elements: vec![identity], kind: GroupKind::Trivial, center };
    };

    let p_star = class[0];
    let ang_star = polar_angle(pts[p_star].sub(center));
    let mut rotations: Vec<(T, GroupElement<T>)> = Vec::new();
    let mut reflections: Vec<(T, GroupElement<T>)> = Vec::new();
    for &b in class {
        let ang_b = polar_angle(pts[b].sub(center));
        let rot = Isometry::rotation(center, normalize_angle(ang_b - ang_star));
        let refl = Isometry::reflection(center, (ang_star + ang_b) / c::<T>(2.0));
        for iso in [rot, refl] {
            if let Some(perm) = verify_candidate(&iso, &pts, &kinds, eps) {
                let bucket = if iso.is_reflection() { &mut reflections } else { &mut rotations };
                let key = if iso.is_reflection() { iso.reflection_axis() } else { iso.rotation_angle() };
                if !bucket.iter().any(|(_, g)| g.iso.approx_eq(&iso, c::<T>(1e-9))) {
                    bucket.push((key, GroupElement { iso, perm }));
                }
            }
        }
    }
    rotations.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite angles"));
    reflections.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite angles"));

    let m = rotations.len().max(1);
    if rotations.is_empty() {
        rotations.push((T::zero(), identity));
    }
    // A valid dihedral group has exactly as many mirrors as rotations;
    // anything else is tolerance noise, and the reflections are dropped.
    if !reflections.is_empty() && reflections.len() != m {
        reflections.clear();
    }
    let kind = if reflections.is_empty() {
        if m == 1 {
            GroupKind::Trivial
        } else {
            GroupKind::Cyclic(m)
        }
    } else {
        GroupKind::Dihedral(m)
    };
    let elements = rotations.into_iter().chain(reflections).map(|(_, g)| g).collect();
    SymmetryGroup { elements, kind, center }
}

fn verify_candidate<T: Scalar>(
    iso: &Isometry<T>,
    pts: &[Point<T>],
    kinds: &[bool],
    eps: T,
) -> Option<Vec<usize>> {
    let n = pts.len();
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    for i in 0..n {
        let q = iso.apply(pts[i]);
        let mut best: Option<(T, usize)> = None;
        for (j, &p) in pts.iter().enumerate() {
            if kinds[j] == kinds[i] && !used[j] {
                let d = distance(q, p);
                if best.map_or(true, |(bd, _)| d < bd) {
                    best = Some((d, j));
                }
            }
        }
        match best {
            Some((d, j)) if d <= eps => {
                used[j] = true;
                perm[i] = j;
            }
            _ => return None,
        }
    }
    Some(perm)
}

/// The node partition induced by a group, with angular position labels.
#[derive(Clone, Debug)]
pub struct OrbitPartition {
    /// Orbits ordered by their smallest node index; members ordered by
    /// position label.
    pub orbits: Vec<Vec<usize>>,
    /// Orbit index of each node.
    pub orbit_of: Vec<usize>,
    /// Position of each node within its orbit, counted anticlockwise from
    /// the positive X-axis through the group center.
    pub position: Vec<usize>,
}

impl OrbitPartition {
    pub fn orbit_size(&self, node: usize) -> usize {
        self.orbits[self.orbit_of[node]].len()
    }

    pub fn same_orbit(&self, a: usize, b: usize) -> bool {
        self.orbit_of[a] == self.orbit_of[b]
    }
}

/// Partition the nodes into group orbits.
pub fn orbits<T: Scalar>(group: &SymmetryGroup<T>, instance: &NetworkInstance<T>) -> OrbitPartition {
    let total = instance.len();
    let mut orbit_of = vec![usize::MAX; total];
    let mut orbit_lists: Vec<Vec<usize>> = Vec::new();
    for start in 0..total {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = orbit_lists.len();
        let mut members = vec![start];
        orbit_of[start] = id;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for g in &group.elements {
                let j = g.perm[i];
                if orbit_of[j] == usize::MAX {
                    orbit_of[j] = id;
                    members.push(j);
                    stack.push(j);
                }
            }
        }
        members.sort_by(|&a, &b| {
            let ang_a = polar_angle(instance.point(a).sub(group.center));
            let ang_b = polar_angle(instance.point(b).sub(group.center));
            (ang_a, a).partial_cmp(&(ang_b, b)).expect("finite angles")
        });
        orbit_lists.push(members);
    }
    let mut position = vec![0usize; total];
    for members in &orbit_lists {
        for (m, &i) in members.iter().enumerate() {
            position[i] = m;
        }
    }
    OrbitPartition { orbits: orbit_lists, orbit_of, position }
}

/// Indices (into `group.elements`) of the elements fixing `node`.
pub fn stabilizer<T: Scalar>(group: &SymmetryGroup<T>, node: usize) -> Vec<usize> {
    group
        .elements
        .iter()
        .enumerate()
        .filter_map(|(idx, g)| (g.perm[node] == node).then_some(idx))
        .collect()
}

/// A fundamental region: one representative of every orbit, plus the
/// special collectors on its border.
#[derive(Clone, Debug)]
pub struct FundamentalRegion<T> {
    /// Region nodes `F_0` (sensors and any interior collectors).
    pub nodes: Vec<usize>,
    /// Collectors on the first mirror half-line (dihedral; includes a
    /// center collector if present).
    pub border_c0: Vec<usize>,
    /// Collectors on the second mirror half-line (dihedral).
    pub border_c1: Vec<usize>,
    /// Collectors at the rotation center (rotation case).
    pub center_collectors: Vec<usize>,
    /// Frame direction: the first mirror's angle (dihedral) or the seed
    /// node's angle (rotation case).
    pub frame_angle: T,
    /// Wedge fold `M`.
    pub fold: usize,
    /// Set when the rotation-case closure condition failed and the plain
    /// wedge region was used instead; such a region is a valid transversal
    /// but carries no optimality guarantee.
    pub non_optimal: bool,
    /// True for a dihedral-type region.
    pub dihedral: bool,
}

impl<T> FundamentalRegion<T> {
    /// All node indices the reduced instance keeps.
    pub fn kept_nodes(&self) -> Vec<usize> {
        let mut all = self.nodes.clone();
        all.extend_from_slice(&self.border_c0);
        all.extend_from_slice(&self.border_c1);
        all.extend_from_slice(&self.center_collectors);
        all.sort_unstable();
        all.dedup();
        all
    }
}

/// Construct the fundamental region for a cyclic or dihedral group.
///
/// Dihedral case: `F_0` is everything strictly inside the wedge between
/// the lowest mirror half-line and its neighbor, with the collectors on
/// those half-lines as `C_0`/`C_1`; every sensor must have a trivial
/// stabilizer. Rotation case: the region seeds on the position-0 node of
/// the first non-center orbit and picks the nearest member of every other
/// orbit, falling back to a plain wedge (flagged `non_optimal`) when that
/// choice is not closed under nearest-member routing.
pub fn fundamental_region<T: Scalar>(
    group: &SymmetryGroup<T>,
    instance: &NetworkInstance<T>,
    partition: &OrbitPartition,
) -> Result<FundamentalRegion<T>> {
    match group.kind {
        GroupKind::Trivial => Err(Error::NothingToReduce),
        GroupKind::Dihedral(m) if m >= 2 => dihedral_region(group, instance, m),
        GroupKind::Cyclic(m) if m >= 2 => rotation_region(group, instance, partition, m),
        _ => Err(Error::NothingToReduce),
    }
}

fn center_eps<T: Scalar>(instance: &NetworkInstance<T>) -> T {
    c::<T>(EPS_GEO) * (T::one() + instance.diameter())
}

fn dihedral_region<T: Scalar>(
    group: &SymmetryGroup<T>,
    instance: &NetworkInstance<T>,
    m: usize,
) -> Result<FundamentalRegion<T>> {
    let center = group.center;
    let eps0 = center_eps(instance);

    for i in instance.k()..instance.len() {
        if distance(instance.point(i), center) <= eps0 {
            return Err(Error::CenterPoint);
        }
        if stabilizer(group, i).len() > 1 {
            return Err(Error::NontrivialSensorStabilizer(i));
        }
    }

    let phi0 = group
        .elements
        .iter()
        .filter(|g| g.iso.is_reflection())
        .map(|g| g.iso.reflection_axis())
        .fold(T::infinity(), T::min);
    let phi1 = phi0 + c::<T>(PI) / c::<T>(m as f64);

    let mut nodes = Vec::new();
    let mut c0 = Vec::new();
    let mut c1 = Vec::new();
    for i in 0..instance.len() {
        let rel = instance.point(i).sub(center);
        let r = rel.norm();
        if r <= eps0 {
            c0.push(i);
            continue;
        }
        let lin_tol = c::<T>(EPS_GEO) * (T::one() + r);
        if on_half_line(rel, phi0, lin_tol) {
            c0.push(i);
        } else if on_half_line(rel, phi1, lin_tol) {
            c1.push(i);
        } else {
            let offset = normalize_angle(polar_angle(rel) - phi0);
            if offset < c::<T>(PI) / c::<T>(m as f64) {
                nodes.push(i);
            }
        }
    }

    Ok(FundamentalRegion {
        nodes,
        border_c0: c0,
        border_c1: c1,
        center_collectors: Vec::new(),
        frame_angle: phi0,
        fold: m,
        non_optimal: false,
        dihedral: true,
    })
}

fn on_half_line<T: Scalar>(rel: Point<T>, angle: T, tol: T) -> bool {
    let (s, co) = angle.sin_cos();
    let cross = co * rel.y - s * rel.x;
    let dot = co * rel.x + s * rel.y;
    cross.abs() <= tol && dot >= -tol
}

fn rotation_region<T: Scalar>(
    group: &SymmetryGroup<T>,
    instance: &NetworkInstance<T>,
    partition: &OrbitPartition,
    m: usize,
) -> Result<FundamentalRegion<T>> {
    let center = group.center;
    let eps0 = center_eps(instance);

    let mut center_collectors = Vec::new();
    for i in 0..instance.len() {
        if distance(instance.point(i), center) <= eps0 {
            if instance.is_collector(i) {
                center_collectors.push(i);
            } else {
                return Err(Error::CenterPoint);
            }
        }
    }

    let ring_orbits: Vec<&Vec<usize>> = partition
        .orbits
        .iter()
        .filter(|members| !center_collectors.contains(&members[0]))
        .collect();
    if ring_orbits.is_empty() {
        return Err(Error::NothingToReduce);
    }
    let seed = ring_orbits[0][0];
    let seed_pt = instance.point(seed);

    // Nearest-to-seed pick from every orbit; ties go to the smallest
    // position label, and membership in the arg-min set is what counts.
    let mut reps = vec![seed];
    for members in ring_orbits.iter().skip(1) {
        let mut best = members[0];
        let mut best_d = distance(seed_pt, instance.point(best));
        for &i in members.iter().skip(1) {
            let d = distance(seed_pt, instance.point(i));
            if d < best_d - c::<T>(EPS_GEO) * (T::one() + best_d) {
                best = i;
                best_d = d;
            }
        }
        reps.push(best);
    }

    // Closure: from every region sensor, the chosen representative of each
    // orbit must itself be a nearest member of that orbit.
    let closed = reps.iter().all(|&a| {
        if instance.is_collector(a) {
            return true;
        }
        let pa = instance.point(a);
        ring_orbits.iter().zip(&reps).all(|(members, &rep)| {
            if rep == a {
                return true;
            }
            let d_rep = distance(pa, instance.point(rep));
            let d_min = members
                .iter()
                .map(|&i| distance(pa, instance.point(i)))
                .fold(T::infinity(), T::min);
            d_rep <= d_min + c::<T>(EPS_GEO) * (T::one() + d_min)
        })
    });

    let mut non_optimal = false;
    if !closed {
        // Fall back to the plain wedge of angle 2π/M anticlockwise from
        // the seed: per orbit, the member with the smallest angular offset.
        non_optimal = true;
        let seed_angle = polar_angle(seed_pt.sub(center));
        reps = ring_orbits
            .iter()
            .map(|members| {
                *members
                    .iter()
                    .min_by(|&&a, &&b| {
                        let da = normalize_angle(polar_angle(instance.point(a).sub(center)) - seed_angle);
                        let db = normalize_angle(polar_angle(instance.point(b).sub(center)) - seed_angle);
                        (da, a).partial_cmp(&(db, b)).expect("finite angles")
                    })
                    .unwrap()
            })
            .collect();
    }

    reps.sort_unstable();
    Ok(FundamentalRegion {
        frame_angle: polar_angle(instance.point(seed).sub(center)),
        nodes: reps,
        border_c0: Vec::new(),
        border_c1: Vec::new(),
        center_collectors,
        fold: m,
        non_optimal,
        dihedral: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::EnergyModel;
    use std::f64::consts::TAU;

    fn square_with_center() -> NetworkInstance<f64> {
        NetworkInstance {
            collectors: vec![Point::new(0.0, 0.0)],
            sensors: vec![
                Point::new(1.0, 0.0),
                Point::new(0.0, 1.0),
                Point::new(-1.0, 0.0),
                Point::new(0.0, -1.0),
            ],
            data: vec![1.0; 4],
            energy_model: EnergyModel::power(1.0, 2.0),
        }
    }

    fn pinwheel(m: usize, twist: f64) -> NetworkInstance<f64> {
        let mut sensors = Vec::new();
        for k in 0..m {
            let a = TAU * k as f64 / m as f64;
            sensors.push(Point::new(a.cos(), a.sin()));
        }
        for k in 0..m {
            let a = TAU * k as f64 / m as f64 + twist;
            sensors.push(Point::new(2.0 * a.cos(), 2.0 * a.sin()));
        }
        NetworkInstance {
            collectors: vec![Point::new(0.0, 0.0)],
            sensors,
            data: vec![1.0; 2 * m],
            energy_model: EnergyModel::power(1.0, 2.0),
        }
    }

    fn detect(inst: &NetworkInstance<f64>) -> SymmetryGroup<f64> {
        detect_symmetry_group(inst, default_eps_sym(inst))
    }

    #[test]
    fn square_is_dihedral_four() {
        let g = detect(&square_with_center());
        assert_eq!(g.kind, GroupKind::Dihedral(4));
        assert_eq!(g.order(), 8);
    }

    #[test]
    fn scalene_is_trivial() {
        let inst = NetworkInstance {
            collectors: vec![Point::new(0.53333, 0.4)],
            sensors: vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.6, 1.2)],
            data: vec![1.0; 3],
            energy_model: EnergyModel::power(1.0, 2.0),
        };
        let g = detect(&inst);
        assert_eq!(g.kind, GroupKind::Trivial);
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn twisted_pinwheel_is_cyclic_four() {
        let g = detect(&pinwheel(4, 20.0_f64.to_radians()));
        assert_eq!(g.kind, GroupKind::Cyclic(4));
        assert_eq!(g.order(), 4);
    }

    #[test]
    fn group_axioms_hold() {
        for inst in [square_with_center(), pinwheel(5, 0.3)] {
            let g = detect(&inst);
            let perms: Vec<&Vec<usize>> = g.elements.iter().map(|e| &e.perm).collect();
            for a in &g.elements {
                for b in &g.elements {
                    let composed: Vec<usize> = (0..inst.len()).map(|i| a.perm[b.perm[i]]).collect();
                    assert!(perms.contains(&&composed), "composition not closed");
                }
                let inv: Vec<usize> = {
                    let mut v = vec![0; inst.len()];
                    for i in 0..inst.len() {
                        v[a.perm[i]] = i;
                    }
                    v
                };
                assert!(perms.contains(&&inv), "inverse missing");
            }
            let id: Vec<usize> = (0..inst.len()).collect();
            assert!(perms.contains(&&id), "identity missing");
        }
    }

    #[test]
    fn orbits_of_square() {
        let inst = square_with_center();
        let g = detect(&inst);
        let p = orbits(&g, &inst);
        assert_eq!(p.orbits.len(), 2);
        assert_eq!(p.orbits[0], vec![0]);
        assert_eq!(p.orbits[1], vec![1, 2, 3, 4]);
    }

    #[test]
    fn trivial_group_gives_singleton_orbits() {
        let inst = square_with_center();
        let g = SymmetryGroup {
            elements: vec![GroupElement { iso: Isometry::identity(), perm: (0..inst.len()).collect() }],
            kind: GroupKind::Trivial,
            center: inst.centroid(),
        };
        let p = orbits(&g, &inst);
        assert_eq!(p.orbits.len(), inst.len());
    }

    #[test]
    fn pinwheel_orbit_sizes() {
        let inst = pinwheel(4, 20.0_f64.to_radians());
        let g = detect(&inst);
        let p = orbits(&g, &inst);
        let mut sizes: Vec<usize> = p.orbits.iter().map(|o| o.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 4, 4]);
    }

    #[test]
    fn position_labels_follow_angles() {
        let inst = pinwheel(4, 0.2);
        let g = detect(&inst);
        let p = orbits(&g, &inst);
        for members in &p.orbits {
            for w in members.windows(2) {
                let a = polar_angle(inst.point(w[0]).sub(g.center));
                let b = polar_angle(inst.point(w[1]).sub(g.center));
                assert!(a < b);
            }
        }
    }

    #[test]
    fn stabilizer_sizes() {
        let inst = square_with_center();
        let g = detect(&inst);
        // Center collector is fixed by everything.
        assert_eq!(stabilizer(&g, 0).len(), 8);
        // A sensor on a mirror has {id, that mirror}.
        assert_eq!(stabilizer(&g, 1).len(), 2);

        let tw = pinwheel(4, 0.35);
        let gg = detect(&tw);
        assert_eq!(gg.kind, GroupKind::Cyclic(4));
        assert_eq!(stabilizer(&gg, 0).len(), 4);
        assert_eq!(stabilizer(&gg, 1).len(), 1);
    }

    #[test]
    fn orbit_stabilizer_identity() {
        for inst in [square_with_center(), pinwheel(4, 0.35), pinwheel(6, 0.0)] {
            let g = detect(&inst);
            let p = orbits(&g, &inst);
            for i in 0..inst.len() {
                assert_eq!(p.orbit_size(i) * stabilizer(&g, i).len(), g.order());
            }
        }
    }

    #[test]
    fn detection_survives_random_rotation() {
        let inst = pinwheel(5, 0.4);
        let base = detect(&inst);
        let g = Isometry::rotation(Point::new(0.0, 0.0), 0.777).compose(&Isometry::translation(Point::new(2.0, -3.0)));
        let mut moved = inst.clone();
        for p in moved.collectors.iter_mut().chain(moved.sensors.iter_mut()) {
            *p = g.apply(*p);
        }
        let rotated = detect(&moved);
        assert_eq!(rotated.kind, base.kind);
        assert_eq!(rotated.order(), base.order());
    }

    #[test]
    fn aligned_two_orbit_region_is_a_chain() {
        let inst = pinwheel(4, 0.0);
        let g = detect(&inst);
        assert_eq!(g.kind, GroupKind::Dihedral(4));
        // Aligned rings have mirrors; reduce over rotations only.
        let rot = g.rotation_subgroup();
        let p = orbits(&rot, &inst);
        let region = fundamental_region(&rot, &inst, &p).unwrap();
        assert!(!region.non_optimal);
        assert_eq!(region.center_collectors, vec![0]);
        assert_eq!(region.nodes, vec![1, 5]);
    }

    #[test]
    fn dihedral_sensors_on_mirrors_rejected() {
        let inst = square_with_center();
        let g = detect(&inst);
        let p = orbits(&g, &inst);
        let err = fundamental_region(&g, &inst, &p).unwrap_err();
        assert!(matches!(err, Error::NontrivialSensorStabilizer(_)));
    }

    #[test]
    fn rotation_region_nearest_pick() {
        // Outer ring twisted by less than half a sector: closure holds and
        // each rep is angularly nearest to the seed.
        let inst = pinwheel(4, 0.3);
        let g = detect(&inst);
        assert_eq!(g.kind, GroupKind::Cyclic(4));
        let p = orbits(&g, &inst);
        let region = fundamental_region(&g, &inst, &p).unwrap();
        assert!(!region.non_optimal);
        assert_eq!(region.nodes, vec![1, 5]);
        assert_eq!(region.center_collectors, vec![0]);
    }

    #[test]
    fn center_sensor_rejected() {
        // Collector ring twisted against the sensor ring (pure rotations),
        // plus one sensor at the shared center.
        let mut collectors = Vec::new();
        let mut sensors = vec![Point::new(0.0, 0.0)];
        for k in 0..4 {
            let a = TAU * k as f64 / 4.0;
            collectors.push(Point::new(3.0 * (a + 0.3).cos(), 3.0 * (a + 0.3).sin()));
            sensors.push(Point::new(a.cos(), a.sin()));
        }
        let inst = NetworkInstance {
            collectors,
            sensors,
            data: vec![1.0; 5],
            energy_model: EnergyModel::power(1.0, 2.0),
        };
        let g = detect(&inst);
        assert_eq!(g.kind, GroupKind::Cyclic(4));
        let p = orbits(&g, &inst);
        assert!(matches!(fundamental_region(&g, &inst, &p), Err(Error::CenterPoint)));
    }

    #[test]
    fn region_images_tile_the_network() {
        let inst = pinwheel(5, 0.25);
        let g = detect(&inst);
        let p = orbits(&g, &inst);
        let region = fundamental_region(&g, &inst, &p).unwrap();
        let mut seen = vec![0usize; inst.len()];
        for &i in &region.nodes {
            for e in &g.elements {
                seen[e.perm[i]] += 1;
            }
        }
        for &i in &region.center_collectors {
            seen[i] += 1;
        }
        for (i, &count) in seen.iter().enumerate() {
            if region.center_collectors.contains(&i) {
                assert_eq!(count, 1);
            } else {
                assert_eq!(count, 1, "node {i} covered {count} times");
            }
        }
    }
}
