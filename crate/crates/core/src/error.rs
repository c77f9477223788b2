use thiserror::Error;

/// Kernel errors.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("lines {0} and {1} are parallel")]
    ParallelLines(usize, usize),
    #[error("degenerate scene: {0}")]
    DegenerateScene(String),
    #[error("vector is not perpendicular to every line direction (max |w.v| = {0:e})")]
    NotPerpendicular(f64),
    #[error("edge {pair} of length {length} cannot span the gap {gap} between its lines")]
    EdgeTooShort { pair: &'static str, length: f64, gap: f64 },
    #[error("zero direction vector")]
    ZeroDirection,
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("invalid edge length {0}")]
    InvalidEdgeLength(f64),
    #[error("edge lengths violate the triangle inequality")]
    ImpossibleTriangle,
    #[error("collinear (degenerate) triangle")]
    DegenerateTriangle,
    #[error("no third vertex: the carried point misses its line by {0:e}")]
    NoThirdVertex(f64),
    #[error("ambiguous side: both third-vertex candidates coincide")]
    AmbiguousSide,
    #[error("sample count must be at least 2, got {0}")]
    InvalidSampleCount(usize),
    #[error("no continuous motion: {0}")]
    NotFeasible(String),
    #[error("not planarizable: the scene has no common plane of motion")]
    NotPlanarizable,
    #[error("check not applicable: {0}")]
    NotApplicable(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
