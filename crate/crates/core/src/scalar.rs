use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::{Float, FromPrimitive};

/// Floating-point scalar the library is generic over. `f64` is the default
/// throughout the crate-root aliases; `f32` works for smoke-level accuracy.
pub trait Scalar:
    Float
    + FromPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum
    + Debug
    + Display
    + 'static
{
}

impl<T> Scalar for T where
    T: Float
        + FromPrimitive
        + AddAssign
        + SubAssign
        + MulAssign
        + DivAssign
        + Sum
        + Debug
        + Display
        + 'static
{
}

/// Embed an `f64` constant (tolerances, literals) into the working scalar.
pub fn c<T: Scalar>(x: f64) -> T {
    T::from_f64(x).expect("constant not representable in scalar type")
}

/// A tolerance that never undercuts the scalar's own precision: the given
/// base value, floored at 64 machine epsilons. Identity for `f64` with the
/// bases used here; keeps `f32` runs from failing on their own roundoff.
pub fn prec<T: Scalar>(base: f64) -> T {
    c::<T>(base).max(T::epsilon() * c::<T>(64.0))
}

/// Geometric comparison tolerance, used absolute-plus-relative.
pub const EPS_GEO: f64 = 1e-9;
/// Simplex optimality / termination tolerance.
pub const EPS_OPT: f64 = 1e-9;
/// Tolerance for exact-by-construction invariance checks.
pub const EPS_INV: f64 = 1e-12;
