/// Errors surfaced by the library. Message texts are stable; the CLI
/// prints them verbatim and maps them to exit codes.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("infeasible: no sink")]
    NoSink,
    #[error("reduced problem has no sink")]
    ReducedNoSink,
    #[error("nontrivial sensor stabilizer (node {0})")]
    NontrivialSensorStabilizer(usize),
    #[error("center point has full stabilizer")]
    CenterPoint,
    #[error("requires invariant flow (violation {0})")]
    RequiresInvariantFlow(String),
    #[error("energy matrix not distance-monotone")]
    NotDistanceMonotone,
    #[error("{0} not group-invariant")]
    NotGroupInvariant(&'static str),
    #[error("nothing to reduce")]
    NothingToReduce,
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("invalid energy model: {0}")]
    InvalidEnergyModel(String),
    #[error("invalid isometry: linear part not orthogonal")]
    InvalidIsometry,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("generator seed on region boundary (seed {0})")]
    SeedOnBoundary(usize),
    #[error("solver failed: {0}")]
    Solver(String),
}

pub type Result<T> = std::result::Result<T, Error>;
