//! Sharp spherical-shell bounds for convex bodies whose boundary normal
//! curvatures are pinched between `kappa1` and `kappa2`, in Euclidean,
//! spherical and hyperbolic space.
//!
//! * [`geometry`]: curvature admissibility, circle radius/curvature
//!   conversion and the law of cosines in each model plane.
//! * [`bounds`]: closed-form width, outer-radius, quotient and stability
//!   bounds.
//! * [`spindle`]: the rounded spindles that attain the bounds.
//! * [`verify`]: inscribed/circumscribed shells of generated bodies and
//!   batch checks against the bounds.

pub mod bounds;
pub mod error;
pub mod geometry;
pub mod model;
mod optimize;
pub mod spindle;
pub mod verify;

pub use bounds::{
    outer_radius_bound, quotient_bound, quotient_bound_coarse, quotient_maximizer,
    quotient_profile, stability, stability_quotient_constant, stability_width_constant,
    width_bound, width_profile, QuotientBoundResult, StabilityResult, WidthBoundResult,
};
pub use error::{Error, Result};
pub use geometry::{
    admissible, curvature_from_sphere_radius, law_of_cosines_angle, law_of_cosines_side,
    right_triangle_leg, sphere_radius_from_curvature, PinchSpec, SpaceCurvature,
};
pub use model::{Model, Point};
pub use spindle::{
    build_spindle, numeric_radii, sample_profile, spindle_geometry, spindle_radii, ArcRole,
    ProfileCurve, ProfileSample, SpindleGeometry, SpindleSpec,
};
pub use verify::{
    check_bounds, random_pinched_curve, random_revolution_body, run_batch, summarize, BatchConfig,
    BatchSummary, BodyRecord, ConvexBody, Family, RevolutionBody, ShellResult, SupportCurve,
};
