use thiserror::Error;

/// Errors raised by region construction and the supporting numerics.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty data set")]
    EmptyData,
    #[error("degenerate data: {n} points cannot span dimension {dim}")]
    DegenerateData { n: usize, dim: usize },
    #[error("matrix is not symmetric positive definite (pivot {pivot} failed)")]
    NotSpd { pivot: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("points are affinely dependent and do not define a hyperplane")]
    DegenerateSimplex,
    #[error("degenerate hull: input has affine rank {rank} in dimension {dim}")]
    DegenerateHull { rank: usize, dim: usize },
    #[error("interior point violates halfspace {index} (slack {slack:e})")]
    BadInteriorPoint { index: usize, slack: f64 },
    #[error("halfspace intersection is unbounded")]
    UnboundedRegion,
    #[error("insufficient points: {available} available, {required} required")]
    InsufficientPoints { available: usize, required: usize },
    #[error("alpha must lie strictly between 0 and 1, got {0}")]
    InvalidAlpha(f64),
    #[error("non-finite coordinate at point {0}")]
    NonFinite(usize),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
