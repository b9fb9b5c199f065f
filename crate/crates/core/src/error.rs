use thiserror::Error;

/// Errors produced by the geometry, bound and verification routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The curvature pair violates one of the admissibility conditions.
    #[error("inadmissible curvature pair: {0}")]
    Inadmissible(String),

    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The operation only exists in Euclidean space.
    #[error("{0} is only defined for flat space (got c = {1})")]
    UnsupportedGeometry(&'static str, f64),

    /// The pinch is degenerate (`kappa1 == kappa2`) and the quantity has no
    /// isolated extremum.
    #[error("degenerate pinch: {0}")]
    Degenerate(String),

    /// A body does not satisfy the curvature pinching it is checked against.
    #[error("body is not ({kappa1}, {kappa2})-pinched at {} location(s), first at {}", .offending.len(), .offending.first().copied().unwrap_or(f64::NAN))]
    PinchViolated {
        kappa1: f64,
        kappa2: f64,
        /// Normal angles (flat curves) or arc-length positions (meridians)
        /// where the curvature leaves the allowed interval.
        offending: Vec<f64>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
