//! Closed-form shell bounds for `(kappa1, kappa2)`-pinched convex domains.
//!
//! Every bound is attained by a rounded spindle with inscribed radius
//! `r~ in [R2, R1]`; its circumscribed radius is [`outer_radius_bound`], and
//! the width and quotient bounds are the maxima of `R~(r~) - r~` and
//! `R~(r~) / r~` over that family.

use std::f64::consts::SQRT_2;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{admissible, right_triangle_leg, PinchSpec, SpaceCurvature};
use crate::optimize::golden_max;

/// `sqrt(2) - 1`, the first-order width and quotient stability constant.
pub const SQRT2_MINUS_1: f64 = SQRT_2 - 1.0;

/// Abscissa tolerance of the numeric width maximizer in curved spaces.
const MAXIMIZER_TOL: f64 = 1e-12;

/// Relative slack accepted on the `[R2, R1]` range check before clamping.
const RANGE_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WidthBoundResult {
    /// Sharp upper bound on `R - r`.
    pub bound: f64,
    /// Inscribed radius of the spindle attaining the bound.
    pub maximizer_r: f64,
    /// Circumscribed radius of that spindle.
    pub attained_r_outer: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuotientBoundResult {
    /// Sharp upper bound on `R / r` (Euclidean only).
    pub bound: f64,
    pub maximizer_r: f64,
    pub attained_r_outer: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StabilityResult {
    /// `C(kappa, c)`, with `R - r < C * epsilon`.
    pub width_constant: f64,
    /// `sqrt(2) - 1` in flat space, with `R/r - 1 < C * epsilon`.
    pub quotient_constant: Option<f64>,
    pub epsilon: f64,
    /// Exact width bound for the pinch `(kappa, (1 + epsilon) kappa)`.
    pub width_bound: f64,
    /// Exact quotient bound for that pinch (flat only).
    pub quotient_bound: Option<f64>,
}

fn require_flat(pinch: &PinchSpec, what: &'static str) -> Result<()> {
    if pinch.curvature().is_flat() {
        Ok(())
    } else {
        Err(Error::UnsupportedGeometry(what, pinch.curvature().c()))
    }
}

/// Clamps `r` into `[R2, R1]`, rejecting values beyond rounding noise.
fn check_inner_radius(pinch: &PinchSpec, r: f64) -> Result<f64> {
    let (r1, r2) = (pinch.r1(), pinch.r2());
    let slack = RANGE_SLACK * r1;
    if !(r.is_finite() && r >= r2 - slack && r <= r1 + slack) {
        return Err(Error::Domain(format!(
            "inner radius {r} lies outside [R2, R1] = [{r2}, {r1}]"
        )));
    }
    Ok(r.clamp(r2, r1))
}

/// Sharp bound on the circumscribed radius `R` of a shell centred at the
/// inscribed-ball centre, given the inscribed radius `r`.
pub fn outer_radius_bound(pinch: &PinchSpec, r: f64) -> Result<f64> {
    let r = check_inner_radius(pinch, r)?;
    let (r1, r2) = (pinch.r1(), pinch.r2());
    Ok(right_triangle_leg(pinch.curvature(), r1 - r2, r1 - r)? + r2)
}

/// Spindle width `w(r~) = R~(r~) - r~`.
pub fn width_profile(pinch: &PinchSpec, r_tilde: f64) -> Result<f64> {
    let r = check_inner_radius(pinch, r_tilde)?;
    Ok(outer_radius_bound(pinch, r)? - r)
}

/// Closed form of `max w` over `[R2, R1]`.
fn width_closed_form(pinch: &PinchSpec) -> f64 {
    let span = pinch.r1() - pinch.r2();
    match pinch.curvature() {
        SpaceCurvature::Flat => SQRT2_MINUS_1 * span,
        SpaceCurvature::Spherical { k } => {
            // arccos(sqrt(cos t)) = 2 asin(sin(t/2) / sqrt(1 + sqrt(cos t)))
            let t = k * span;
            let x = 2.0 * ((0.5 * t).sin() / (1.0 + t.cos().sqrt()).sqrt()).asin();
            2.0 * x / k - span
        }
        SpaceCurvature::Hyperbolic { k } => {
            // arccosh(sqrt(cosh t)) = 2 asinh(sinh(t/2) / sqrt(1 + sqrt(cosh t)))
            let t = k * span;
            let x = 2.0 * ((0.5 * t).sinh() / (1.0 + t.cosh().sqrt()).sqrt()).asinh();
            2.0 * x / k - span
        }
    }
}

/// Sharp bound on the shell width `R - r`, together with the spindle that
/// attains it.
pub fn width_bound(pinch: &PinchSpec) -> WidthBoundResult {
    let (r1, r2) = (pinch.r1(), pinch.r2());
    if pinch.is_degenerate() {
        return WidthBoundResult {
            bound: 0.0,
            maximizer_r: r1,
            attained_r_outer: r1,
        };
    }
    let maximizer_r = match pinch.curvature() {
        // dw/dr~ = 0  <=>  2 (R1 - r~)^2 = (R1 - R2)^2
        SpaceCurvature::Flat => r1 - (r1 - r2) / SQRT_2,
        _ => {
            golden_max(
                |r| width_profile(pinch, r).unwrap_or(f64::NEG_INFINITY),
                r2,
                r1,
                MAXIMIZER_TOL,
            )
            .0
        }
    };
    let attained_r_outer =
        outer_radius_bound(pinch, maximizer_r).expect("maximizer lies in [R2, R1]");
    WidthBoundResult {
        bound: width_closed_form(pinch),
        maximizer_r,
        attained_r_outer,
    }
}

/// Spindle quotient `q(r~) = R~(r~) / r~` (flat space only).
pub fn quotient_profile(pinch: &PinchSpec, r_tilde: f64) -> Result<f64> {
    require_flat(pinch, "quotient_profile")?;
    let r = check_inner_radius(pinch, r_tilde)?;
    Ok(outer_radius_bound(pinch, r)? / r)
}

/// Interior root `r~0` of `dq/dr~ = 0` where the quotient profile peaks.
pub fn quotient_maximizer(pinch: &PinchSpec) -> Result<f64> {
    require_flat(pinch, "quotient_maximizer")?;
    if pinch.is_degenerate() {
        return Err(Error::Degenerate(
            "kappa1 == kappa2 gives a constant quotient profile".to_owned(),
        ));
    }
    let (r1, r2) = (pinch.r1(), pinch.r2());
    let g = (2.0 * r1 * r2).sqrt();
    Ok((2.0 * r1 * r1 * r2 - r2 * (r1 - r2) * g) / (r1 * r1 + r2 * r2))
}

/// Sharp bound on `R / r` in Euclidean space,
/// `(sqrt(k2/k1) + sqrt 2) / (sqrt(k1/k2) + sqrt 2)`.
pub fn quotient_bound(pinch: &PinchSpec) -> Result<QuotientBoundResult> {
    require_flat(pinch, "quotient_bound")?;
    if pinch.is_degenerate() {
        return Ok(QuotientBoundResult {
            bound: 1.0,
            maximizer_r: pinch.r1(),
            attained_r_outer: pinch.r1(),
        });
    }
    let ratio = pinch.kappa2() / pinch.kappa1();
    let bound = (ratio.sqrt() + SQRT_2) / (ratio.recip().sqrt() + SQRT_2);
    let maximizer_r = quotient_maximizer(pinch)?;
    Ok(QuotientBoundResult {
        bound,
        maximizer_r,
        attained_r_outer: outer_radius_bound(pinch, maximizer_r)?,
    })
}

/// The cruder Euclidean quotient bound `kappa2 / kappa1`.
pub fn quotient_bound_coarse(pinch: &PinchSpec) -> Result<f64> {
    require_flat(pinch, "quotient_bound_coarse")?;
    Ok(pinch.kappa2() / pinch.kappa1())
}

/// `C(kappa, c) = kappa (sqrt 2 - 1) / (kappa^2 + c)`.
pub fn stability_width_constant(kappa: f64, c: SpaceCurvature) -> Result<f64> {
    if !admissible(c, kappa, kappa) {
        return Err(Error::Domain(format!(
            "kappa = {kappa} is not admissible in {}",
            c.label()
        )));
    }
    let denom = kappa * kappa + c.c();
    if denom <= 0.0 {
        return Err(Error::Domain(format!(
            "kappa^2 + c = {denom} must be positive"
        )));
    }
    Ok(kappa * SQRT2_MINUS_1 / denom)
}

pub fn stability_quotient_constant() -> f64 {
    SQRT2_MINUS_1
}

/// Stability constants together with the exact bounds for the almost
/// umbilical pinch `(kappa, (1 + epsilon) kappa)`.
pub fn stability(kappa: f64, c: SpaceCurvature, epsilon: f64) -> Result<StabilityResult> {
    if !(epsilon.is_finite() && epsilon >= 0.0) {
        return Err(Error::Domain(format!(
            "epsilon must be >= 0, got {epsilon}"
        )));
    }
    let width_constant = stability_width_constant(kappa, c)?;
    let pinch = PinchSpec::new(c, kappa, (1.0 + epsilon) * kappa)?;
    let quotient_bound = if c.is_flat() {
        Some(quotient_bound(&pinch)?.bound)
    } else {
        None
    };
    Ok(StabilityResult {
        width_constant,
        quotient_constant: c.is_flat().then(stability_quotient_constant),
        epsilon,
        width_bound: width_bound(&pinch).bound,
        quotient_bound,
    })
}
