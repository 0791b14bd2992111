//! Planar points, Euclidean isometries, and the angular wedge sectors used
//! by the fundamental-region machinery.

use crate::error::{Error, Result};
use crate::scalar::{c, Scalar};

/// A point of the plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Point { x, y }
    }

    pub fn origin() -> Self {
        Point { x: T::zero(), y: T::zero() }
    }

    pub fn add(self, o: Point<T>) -> Point<T> {
        Point::new(self.x + o.x, self.y + o.y)
    }

    pub fn sub(self, o: Point<T>) -> Point<T> {
        Point::new(self.x - o.x, self.y - o.y)
    }

    /// Distance from the origin.
    pub fn norm(self) -> T {
        self.x.hypot(self.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

/// Euclidean distance between two points.
pub fn distance<T: Scalar>(a: Point<T>, b: Point<T>) -> T {
    (a.x - b.x).hypot(a.y - b.y)
}

/// Polar angle of `p` about the origin, normalized to `[0, 2π)`.
pub fn polar_angle<T: Scalar>(p: Point<T>) -> T {
    normalize_angle(p.y.atan2(p.x))
}

/// Normalize an angle to `[0, 2π)`.
pub fn normalize_angle<T: Scalar>(a: T) -> T {
    let tau = c::<T>(std::f64::consts::TAU);
    let mut a = a % tau;
    if a < T::zero() {
        a += tau;
    }
    if a >= tau {
        a -= tau;
    }
    a
}

/// Signed angular difference `a - b` normalized to `(-π, π]`.
pub fn angle_diff<T: Scalar>(a: T, b: T) -> T {
    let pi = c::<T>(std::f64::consts::PI);
    let tau = c::<T>(std::f64::consts::TAU);
    let mut d = normalize_angle(a - b);
    if d > pi {
        d -= tau;
    }
    d
}

/// A plane isometry `p ↦ L·p + shift` with orthogonal linear part.
///
/// Instances are only constructible through validating or by-construction
/// safe methods, so a held `Isometry` is always orthogonal.
#[derive(Clone, Copy, Debug)]
pub struct Isometry<T> {
    linear: [[T; 2]; 2],
    shift: Point<T>,
}

impl<T: Scalar> Isometry<T> {
    /// Build from an explicit matrix and shift; rejects non-orthogonal
    /// linear parts (entrywise 1e-12 on `L·Lᵀ = I` and `|det L| = 1`).
    pub fn new(linear: [[T; 2]; 2], shift: Point<T>) -> Result<Self> {
        let tol = c::<T>(1e-12);
        let [[a, b], [d, e]] = linear;
        let ortho = [(a * a + b * b - T::one()).abs(), (d * d + e * e - T::one()).abs(), (a * d + b * e).abs()];
        let det = a * e - b * d;
        if ortho.iter().any(|&v| v > tol) || (det.abs() - T::one()).abs() > tol {
            return Err(Error::InvalidIsometry);
        }
        Ok(Isometry { linear, shift })
    }

    pub fn identity() -> Self {
        Isometry {
            linear: [[T::one(), T::zero()], [T::zero(), T::one()]],
            shift: Point::origin(),
        }
    }

    /// Rotation by `angle` about `center`.
    pub fn rotation(center: Point<T>, angle: T) -> Self {
        let (s, co) = angle.sin_cos();
        let linear = [[co, -s], [s, co]];
        let shift = Point::new(
            center.x - (co * center.x - s * center.y),
            center.y - (s * center.x + co * center.y),
        );
        Isometry { linear, shift }
    }

    /// Reflection across the line through `center` with direction angle
    /// `axis_angle`.
    pub fn reflection(center: Point<T>, axis_angle: T) -> Self {
        let two = c::<T>(2.0);
        let (s2, c2) = (two * axis_angle).sin_cos();
        let linear = [[c2, s2], [s2, -c2]];
        let shift = Point::new(
            center.x - (c2 * center.x + s2 * center.y),
            center.y - (s2 * center.x - c2 * center.y),
        );
        Isometry { linear, shift }
    }

    /// Pure translation.
    pub fn translation(offset: Point<T>) -> Self {
        Isometry {
            linear: [[T::one(), T::zero()], [T::zero(), T::one()]],
            shift: offset,
        }
    }

    pub fn linear(&self) -> [[T; 2]; 2] {
        self.linear
    }

    pub fn shift(&self) -> Point<T> {
        self.shift
    }

    pub fn det(&self) -> T {
        self.linear[0][0] * self.linear[1][1] - self.linear[0][1] * self.linear[1][0]
    }

    pub fn is_reflection(&self) -> bool {
        self.det() < T::zero()
    }

    /// Rotation angle in `[0, 2π)`; meaningful when `det > 0`.
    pub fn rotation_angle(&self) -> T {
        normalize_angle(self.linear[1][0].atan2(self.linear[0][0]))
    }

    /// Mirror axis direction in `[0, π)`; meaningful when `det < 0`.
    pub fn reflection_axis(&self) -> T {
        let two = c::<T>(2.0);
        let pi = c::<T>(std::f64::consts::PI);
        let mut a = self.linear[1][0].atan2(self.linear[0][0]) / two;
        if a < T::zero() {
            a += pi;
        }
        if a >= pi {
            a -= pi;
        }
        a
    }

    pub fn apply(&self, p: Point<T>) -> Point<T> {
        Point::new(
            self.linear[0][0] * p.x + self.linear[0][1] * p.y + self.shift.x,
            self.linear[1][0] * p.x + self.linear[1][1] * p.y + self.shift.y,
        )
    }

    /// Composition `self ∘ other`: `other` is applied first.
    pub fn compose(&self, other: &Self) -> Self {
        let a = self.linear;
        let b = other.linear;
        let linear = [
            [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
            [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
        ];
        Isometry { linear, shift: self.apply(other.shift) }
    }

    pub fn inverse(&self) -> Self {
        let l = self.linear;
        let inv = [[l[0][0], l[1][0]], [l[0][1], l[1][1]]];
        let s = Point::new(
            -(inv[0][0] * self.shift.x + inv[0][1] * self.shift.y),
            -(inv[1][0] * self.shift.x + inv[1][1] * self.shift.y),
        );
        Isometry { linear: inv, shift: s }
    }

    /// Entrywise comparison of linear parts and shifts.
    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        let a = self.linear;
        let b = other.linear;
        for r in 0..2 {
            for cidx in 0..2 {
                if (a[r][cidx] - b[r][cidx]).abs() > tol {
                    return false;
                }
            }
        }
        (self.shift.x - other.shift.x).abs() <= tol && (self.shift.y - other.shift.y).abs() <= tol
    }
}

/// Apply an isometry to a point.
pub fn apply_isometry<T: Scalar>(g: &Isometry<T>, p: Point<T>) -> Point<T> {
    g.apply(p)
}

/// Which half of a sector an angle falls in: below or above the sector's
/// bisector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Half {
    Minus,
    Plus,
}

/// Angular sector `V_m` of an `M`-fold partition of the plane, split into
/// halves `V_m^-` / `V_m^+` at the bisector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Wedge {
    pub fold: usize,
    pub sector: usize,
    pub half: Half,
}

/// Classify `p` into the wedge partition of fold `M` about the origin.
///
/// Sectors are half-open `[m·2π/M, (m+1)·2π/M)`; an angle exactly on the
/// bisector belongs to the minus half. The origin has no angle and is
/// rejected.
pub fn wedge_classify<T: Scalar>(p: Point<T>, fold: usize) -> Result<Wedge> {
    if p.x == T::zero() && p.y == T::zero() {
        return Err(Error::CenterPoint);
    }
    Ok(wedge_classify_angle(polar_angle(p), fold))
}

/// Classify a polar angle into the wedge partition of fold `M`.
pub fn wedge_classify_angle<T: Scalar>(theta: T, fold: usize) -> Wedge {
    assert!(fold >= 2, "wedge fold must be at least 2");
    let theta = normalize_angle(theta);
    let alpha = c::<T>(std::f64::consts::TAU) / c::<T>(fold as f64);
    let mut sector = (theta / alpha).floor().to_usize().unwrap_or(0);
    if sector >= fold {
        sector = fold - 1;
    }
    let offset = theta - c::<T>(sector as f64) * alpha;
    let half = if offset <= alpha / c::<T>(2.0) { Half::Minus } else { Half::Plus };
    Wedge { fold, sector, half }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI, TAU};

    #[test]
    fn distance_three_four_five() {
        assert_eq!(distance(Point::new(0.0, 0.0), Point::new(3.0, 4.0)), 5.0);
    }

    #[test]
    fn distance_coincident_is_zero() {
        assert_eq!(distance(Point::new(1.0, 1.0), Point::new(1.0, 1.0)), 0.0);
    }

    #[test]
    fn quarter_turn() {
        let g = Isometry::rotation(Point::origin(), FRAC_PI_2);
        let p = g.apply(Point::new(1.0, 0.0));
        assert!((p.x - 0.0).abs() < 1e-15 && (p.y - 1.0).abs() < 1e-15);
    }

    #[test]
    fn mirror_across_x_axis() {
        let g = Isometry::reflection(Point::<f64>::origin(), 0.0);
        let p = g.apply(Point::new(2.0, 3.0));
        assert!((p.x - 2.0).abs() < 1e-15 && (p.y + 3.0).abs() < 1e-15);
    }

    #[test]
    fn identity_fixes_points() {
        let g = Isometry::<f64>::identity();
        let p = Point::new(-0.3, 7.1);
        assert_eq!(g.apply(p), p);
    }

    #[test]
    fn rotation_preserves_distance() {
        let g = Isometry::rotation(Point::origin(), 1.234_f64);
        let (a, b) = (Point::new(0.0, 0.0), Point::new(1.0, 0.0));
        let d = distance(g.apply(a), g.apply(b));
        assert!((d - 1.0).abs() <= 1e-12 * 2.0);
    }

    #[test]
    fn non_orthogonal_rejected() {
        let r = Isometry::new([[1.0, 0.5], [0.0, 1.0]], Point::origin());
        assert!(matches!(r, Err(Error::InvalidIsometry)));
    }

    #[test]
    fn composition_stays_orthogonal() {
        let g = Isometry::rotation(Point::new(0.5, -0.2), 0.7_f64);
        let h = Isometry::reflection(Point::new(-1.0, 0.3), 2.1);
        let k = g.compose(&h);
        assert!(Isometry::new(k.linear(), k.shift()).is_ok());
        let inv = k.inverse().compose(&k);
        assert!(inv.approx_eq(&Isometry::identity(), 1e-12));
    }

    #[test]
    fn wedge_examples_fold_four() {
        let w = wedge_classify(Point::new(1.0, 0.1), 4).unwrap();
        assert_eq!((w.sector, w.half), (0, Half::Minus));
        let w = wedge_classify(Point::new(0.5, 0.8), 4).unwrap();
        assert_eq!((w.sector, w.half), (0, Half::Plus));
        let w = wedge_classify(Point::new(-1.0, 0.5), 4).unwrap();
        assert_eq!((w.sector, w.half), (1, Half::Plus));
    }

    #[test]
    fn wedge_boundary_ties() {
        // Sector boundary belongs to the sector it starts.
        let w = wedge_classify(Point::new(0.0, 2.0), 4).unwrap();
        assert_eq!((w.sector, w.half), (1, Half::Minus));
        // Bisector belongs to minus.
        let w = wedge_classify(Point::new(1.0, 1.0), 4).unwrap();
        assert_eq!((w.sector, w.half), (0, Half::Minus));
    }

    #[test]
    fn wedge_origin_rejected() {
        assert!(matches!(wedge_classify(Point::<f64>::origin(), 4), Err(Error::CenterPoint)));
    }

    #[test]
    fn wedge_rotation_increments_sector() {
        let fold = 5;
        let p = Point::new(0.9, 0.35);
        let w0 = wedge_classify(p, fold).unwrap();
        let g = Isometry::rotation(Point::origin(), TAU / fold as f64);
        let w1 = wedge_classify(g.apply(p), fold).unwrap();
        assert_eq!(w1.sector, (w0.sector + 1) % fold);
        assert_eq!(w1.half, w0.half);
    }

    #[test]
    fn reflection_axis_roundtrip() {
        for &axis in &[0.0, 0.4, FRAC_PI_2, 2.0, PI - 1e-3] {
            let g = Isometry::reflection(Point::<f64>::origin(), axis);
            assert!((g.reflection_axis() - axis).abs() < 1e-12, "axis {axis}");
            assert!(g.is_reflection());
        }
    }

    #[test]
    fn angle_diff_signed() {
        assert!((angle_diff(0.1, TAU - 0.1) - 0.2).abs() < 1e-12);
        assert!((angle_diff(TAU - 0.1, 0.1) + 0.2).abs() < 1e-12);
    }
}
