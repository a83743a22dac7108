use thiserror::Error;

/// Errors raised by the analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix must be {expected}x{expected}, got {got}x{got}")]
    WrongSize { expected: usize, got: usize },

    #[error("non-finite value in input")]
    NonFinite,

    #[error("vector norm {norm} is not within 1e-12 of 1")]
    NotUnitNorm { norm: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("point lies outside the numerical range (scale {scale})")]
    OutsideRange { scale: f64 },

    #[error("matrix is not numerically rank one (tail ratio {ratio:e})")]
    NotRankOne { ratio: f64 },

    #[error("empty point cloud")]
    EmptyCloud,

    #[error("support profile too coarse: {got} angles, need at least {min}")]
    ProfileTooCoarse { got: usize, min: usize },

    #[error("support profiles are sampled on different angle grids")]
    GridMismatch,

    #[error("q must lie in [0, 1], got {0}")]
    QOutOfRange(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
