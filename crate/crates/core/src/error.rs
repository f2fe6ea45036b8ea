//! Crate-wide error type.

use thiserror::Error;

/// Errors surfaced by the public API.
///
/// `Input` and the more specific variants above it are caller mistakes;
/// `Internal` marks a broken invariant of this crate and is never expected.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("half-space normal must be nonzero")]
    ZeroNormal,

    #[error("invalid cone: {0}")]
    InvalidCone(String),

    #[error("cone has empty interior")]
    ConeNotFull,

    #[error("poset elements `{0}` and `{1}` are not comparable")]
    NotComparable(String, String),

    #[error("points are not comparable under the cone order")]
    PointsNotComparable,

    #[error("resolution kinds do not match")]
    KindMismatch,

    #[error("support is not compact")]
    NonCompactSupport,

    #[error("input error: {0}")]
    Input(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
