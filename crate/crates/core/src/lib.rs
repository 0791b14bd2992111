//! Maximum-lifetime data routing for planar sensor networks, with
//! symmetry detection, group-averaged canonical optima, and
//! fundamental-region reduction.

pub mod canonical;
pub mod error;
pub mod generator;
pub mod geometry;
pub mod model;
pub mod reduction;
pub mod scalar;
pub mod solver;
pub mod symmetry;

pub use canonical::{cancel_pairwise, check_invariance, conjugate_flow, remove_intra_orbit, symmetrize, InvarianceReport};
pub use error::{Error, Result};
pub use generator::{generate, GenKind, GeneratorSpec, SeedNode};
pub use geometry::{
    apply_isometry, angle_diff, distance, normalize_angle, polar_angle, wedge_classify,
    wedge_classify_angle, Half, Isometry, Point, Wedge,
};
pub use model::{build_energy_matrix, check_monotone, validate_instance, Diagnostic, EnergyMatrix, EnergyModel, NetworkInstance};
pub use reduction::{lift_solution, reduce_instance, verify_reduction, ReducedInstance, ReductionReport};
pub use scalar::{Scalar, EPS_GEO, EPS_INV, EPS_OPT};
pub use solver::{
    conservation_residuals, eps_feas, lifetime_cycles, sensor_energies, solve_max_lifetime, FlowMatrix, Lifetime,
    Solution,
};
pub use symmetry::{
    default_eps_sym, detect_symmetry_group, fundamental_region, orbits, stabilizer, FundamentalRegion,
    GroupElement, GroupKind, OrbitPartition, SymmetryGroup,
};

/// `f64` is the working precision for the CLI and most users.
pub type Point64 = Point<f64>;
pub type Isometry64 = Isometry<f64>;
pub type EnergyModel64 = EnergyModel<f64>;
pub type NetworkInstance64 = NetworkInstance<f64>;
pub type EnergyMatrix64 = EnergyMatrix<f64>;
pub type FlowMatrix64 = FlowMatrix<f64>;
pub type Solution64 = Solution<f64>;
