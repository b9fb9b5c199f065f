//! Shell measurements of generated convex bodies, checked against the
//! closed-form bounds.
//!
//! Two body classes are supported: planar curves given by a support function
//! ([`SupportCurve`]) and bodies of revolution with an arc meridian in any
//! of the three geometries ([`RevolutionBody`]). The shell is always centred
//! at the inscribed-ball centre.

mod chebyshev;
mod revolution;
mod support;

use std::ops::Range;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::bounds::{outer_radius_bound, quotient_bound, quotient_maximizer, width_bound};
use crate::error::{Error, Result};
use crate::geometry::{PinchSpec, SpaceCurvature};
use crate::model::Point;
use crate::spindle::SpindleSpec;

pub use chebyshev::{circumradius_from, inscribed_disc};
pub use revolution::{random_revolution_body, RevolutionBody};
pub use support::{random_pinched_curve, SupportCurve, GRID};

/// Slack allowed on every bound comparison.
pub const BOUND_TOL: f64 = 1e-7;
/// Slack allowed on curvature pinching.
pub const PINCH_TOL: f64 = 1e-8;
/// Default number of Fourier modes of random curves.
pub const DEFAULT_MODES: usize = 6;

/// A convex body whose inscribed/circumscribed shell can be measured.
pub trait ConvexBody {
    fn space(&self) -> SpaceCurvature;

    /// Minimum and maximum boundary curvature.
    fn curvature_range(&self) -> (f64, f64);

    /// Angles where the curvature leaves `[kappa1 - tol, kappa2 + tol]`.
    fn pinch_violations(&self, pinch: &PinchSpec, tol: f64) -> Vec<f64>;

    /// Center and radius of the largest inscribed ball.
    fn inscribed_ball(&self) -> Result<(Point, f64)>;

    /// Largest distance from an interior `center` to the boundary.
    fn circumscribed_from_center(&self, center: &Point) -> Result<f64>;

    /// Blaschke rolling test at `samples` boundary points.
    fn rolling_check(&self, pinch: &PinchSpec, samples: usize) -> bool;
}

fn flat_point(p: [f64; 2]) -> Point {
    Point::new(p[0], p[1], 1.0)
}

impl ConvexBody for SupportCurve {
    fn space(&self) -> SpaceCurvature {
        SpaceCurvature::Flat
    }

    fn curvature_range(&self) -> (f64, f64) {
        let (lo, hi) = self.radius_extremes();
        (1.0 / hi, 1.0 / lo)
    }

    fn pinch_violations(&self, pinch: &PinchSpec, tol: f64) -> Vec<f64> {
        // Curvature 1/rho in [k1 - tol, k2 + tol].
        let lo = 1.0 / (pinch.kappa2() + tol);
        let hi = if pinch.kappa1() - tol > 0.0 {
            1.0 / (pinch.kappa1() - tol)
        } else {
            f64::INFINITY
        };
        self.radius_violations(lo, hi)
    }

    fn inscribed_ball(&self) -> Result<(Point, f64)> {
        inscribed_disc(self, 0).map(|(o, r)| (flat_point(o), r))
    }

    fn circumscribed_from_center(&self, center: &Point) -> Result<f64> {
        circumradius_from(self, [center.x, center.y])
    }

    /// Support-function containment at 512 directions per tangent disc.
    fn rolling_check(&self, pinch: &PinchSpec, samples: usize) -> bool {
        const PROBES: usize = 512;
        let tol = 1e-9 * pinch.r1().max(1.0);
        let dirs: Vec<(f64, f64, f64)> = (0..PROBES)
            .map(|j| {
                let t = std::f64::consts::TAU * j as f64 / PROBES as f64;
                (t.cos(), t.sin(), self.support(t))
            })
            .collect();
        (0..samples).all(|i| {
            let t = std::f64::consts::TAU * i as f64 / samples as f64;
            let x = self.boundary_point(t);
            let (ux, uy) = (t.cos(), t.sin());
            let inner = [x[0] - pinch.r2() * ux, x[1] - pinch.r2() * uy];
            let outer = [x[0] - pinch.r1() * ux, x[1] - pinch.r1() * uy];
            dirs.iter().all(|&(cx, cy, h)| {
                inner[0] * cx + inner[1] * cy + pinch.r2() <= h + tol
                    && h <= outer[0] * cx + outer[1] * cy + pinch.r1() + tol
            })
        })
    }
}

impl ConvexBody for RevolutionBody {
    fn space(&self) -> SpaceCurvature {
        RevolutionBody::space(self)
    }

    fn curvature_range(&self) -> (f64, f64) {
        RevolutionBody::curvature_range(self)
    }

    fn pinch_violations(&self, pinch: &PinchSpec, tol: f64) -> Vec<f64> {
        RevolutionBody::pinch_violations(self, pinch, tol)
    }

    fn inscribed_ball(&self) -> Result<(Point, f64)> {
        Ok(RevolutionBody::inscribed_ball(self))
    }

    fn circumscribed_from_center(&self, center: &Point) -> Result<f64> {
        RevolutionBody::circumscribed_from_center(self, center)
    }

    fn rolling_check(&self, pinch: &PinchSpec, samples: usize) -> bool {
        RevolutionBody::rolling_check(self, pinch, samples)
    }
}

/// `(kmin, kmax)` of a body's boundary curvature.
pub fn curvature_range<B: ConvexBody + ?Sized>(body: &B) -> (f64, f64) {
    body.curvature_range()
}

/// See [`ConvexBody::rolling_check`].
pub fn rolling_check<B: ConvexBody + ?Sized>(body: &B, pinch: &PinchSpec, samples: usize) -> bool {
    body.rolling_check(pinch, samples)
}

fn serialize_point<S: Serializer>(p: &Point, s: S) -> std::result::Result<S::Ok, S::Error> {
    [p.x, p.y, p.z].serialize(s)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShellBounds {
    pub width: f64,
    /// Outer-radius bound evaluated at the measured inner radius.
    pub outer_radius: f64,
    /// Flat only.
    pub quotient: Option<f64>,
}

/// Pass flags, each `observed <= bound + BOUND_TOL`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Satisfied {
    pub width: bool,
    pub outer_radius: bool,
    pub quotient: Option<bool>,
}

impl Satisfied {
    pub fn all(&self) -> bool {
        self.width && self.outer_radius && self.quotient.unwrap_or(true)
    }
}

/// `observed - bound`; non-positive when the bound holds exactly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Margins {
    pub width: f64,
    pub outer_radius: f64,
    pub quotient: Option<f64>,
}

/// Shell of a body about its inscribed-ball centre.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShellResult {
    #[serde(serialize_with = "serialize_point")]
    pub center: Point,
    pub inner_r: f64,
    pub outer_r: f64,
    pub width: f64,
    pub quotient: f64,
    pub bounds: ShellBounds,
    pub satisfied: Satisfied,
    pub margins: Margins,
}

/// Measures the shell of `body` and compares it with the bounds for `pinch`.
pub fn check_bounds<B: ConvexBody + ?Sized>(body: &B, pinch: &PinchSpec) -> Result<ShellResult> {
    if body.space() != pinch.curvature() {
        return Err(Error::Domain(format!(
            "body lives in {} space but the pinch is for {}",
            body.space().label(),
            pinch.curvature().label()
        )));
    }
    let offending = body.pinch_violations(pinch, PINCH_TOL);
    if !offending.is_empty() {
        return Err(Error::PinchViolated {
            kappa1: pinch.kappa1(),
            kappa2: pinch.kappa2(),
            offending,
        });
    }
    let (center, inner_r) = body.inscribed_ball()?;
    let outer_r = body.circumscribed_from_center(&center)?;
    let width = outer_r - inner_r;
    let quotient = outer_r / inner_r;

    let r_in_range = inner_r.clamp(pinch.r2(), pinch.r1());
    let outer_bound = outer_radius_bound(pinch, r_in_range)?;
    let width_b = width_bound(pinch).bound;
    let quotient_b = if pinch.curvature().is_flat() {
        Some(quotient_bound(pinch)?.bound)
    } else {
        None
    };
    let margins = Margins {
        width: width - width_b,
        // An inner radius outside [R2, R1] is itself a violation.
        outer_radius: if inner_r == r_in_range {
            outer_r - outer_bound
        } else {
            (outer_r - outer_bound).max((inner_r - r_in_range).abs())
        },
        quotient: quotient_b.map(|q| quotient - q),
    };
    Ok(ShellResult {
        center,
        inner_r,
        outer_r,
        width,
        quotient,
        bounds: ShellBounds {
            width: width_b,
            outer_radius: outer_bound,
            quotient: quotient_b,
        },
        satisfied: Satisfied {
            width: margins.width <= BOUND_TOL,
            outer_radius: margins.outer_radius <= BOUND_TOL,
            quotient: margins.quotient.map(|m| m <= BOUND_TOL),
        },
        margins,
    })
}

/// Body generator of a batch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// Random planar curves (flat only).
    Random,
    /// Random rounded lenses of revolution.
    Revolution,
    /// Spindles on an even grid of `r~ in [R2, R1]`, followed by the width
    /// maximizer and, for a non-degenerate flat pinch, the quotient maximizer.
    Spindle,
}

impl Family {
    pub fn label(self) -> &'static str {
        match self {
            Family::Random => "random",
            Family::Revolution => "revolution",
            Family::Spindle => "spindle",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BatchConfig {
    pub pinch: PinchSpec,
    pub family: Family,
    /// Ignored by [`Family::Spindle`].
    pub seeds: Range<u64>,
    pub modes: usize,
    /// Number of `r~` grid points for [`Family::Spindle`].
    pub grid: usize,
}

impl BatchConfig {
    pub fn new(pinch: PinchSpec, family: Family, seeds: Range<u64>) -> Self {
        BatchConfig {
            pinch,
            family,
            seeds,
            modes: DEFAULT_MODES,
            grid: 33,
        }
    }

    /// Record identifiers the batch will produce.
    pub fn ids(&self) -> Result<Vec<u64>> {
        Ok(match self.family {
            Family::Spindle => {
                let has_quotient = self.pinch.curvature().is_flat() && !self.pinch.is_degenerate();
                let extra = if has_quotient { 2 } else { 1 };
                (0..self.grid as u64 + extra).collect()
            }
            _ => self.seeds.clone().collect(),
        })
    }

    /// Inscribed parameter of spindle record `id`.
    pub fn spindle_r_tilde(&self, id: u64) -> Result<f64> {
        let (r1, r2) = (self.pinch.r1(), self.pinch.r2());
        let grid = self.grid as u64;
        Ok(if id < grid {
            if grid == 1 {
                r2
            } else {
                r2 + (r1 - r2) * id as f64 / (grid - 1) as f64
            }
        } else if id == grid {
            width_bound(&self.pinch).maximizer_r
        } else {
            quotient_maximizer(&self.pinch)?
        })
    }
}

/// One line of a batch report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BodyRecord {
    pub seed: u64,
    pub family: Family,
    pub pinch: PinchSpec,
    /// Spindle parameter, spindle family only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_tilde: Option<f64>,
    pub r: f64,
    #[serde(rename = "R")]
    pub big_r: f64,
    pub width: f64,
    pub quotient: f64,
    pub bounds: ShellBounds,
    pub satisfied: Satisfied,
    pub margins: Margins,
}

/// Shell record of body `id` in `config`.
pub fn body_record(config: &BatchConfig, id: u64) -> Result<BodyRecord> {
    let pinch = &config.pinch;
    let (shell, r_tilde) = match config.family {
        Family::Random => (
            check_bounds(&random_pinched_curve(pinch, id, config.modes)?, pinch)?,
            None,
        ),
        Family::Revolution => (
            check_bounds(&random_revolution_body(pinch, id)?, pinch)?,
            None,
        ),
        Family::Spindle => {
            let r_tilde = config.spindle_r_tilde(id)?;
            let body = RevolutionBody::spindle(&SpindleSpec::new(*pinch, r_tilde)?)?;
            (check_bounds(&body, pinch)?, Some(r_tilde))
        }
    };
    Ok(BodyRecord {
        seed: id,
        family: config.family,
        pinch: *pinch,
        r_tilde,
        r: shell.inner_r,
        big_r: shell.outer_r,
        width: shell.width,
        quotient: shell.quotient,
        bounds: shell.bounds,
        satisfied: shell.satisfied,
        margins: shell.margins,
    })
}

/// Evaluates every body of the batch in parallel; records are sorted by seed.
pub fn run_batch(config: &BatchConfig) -> Result<Vec<BodyRecord>> {
    let ids = config.ids()?;
    let mut records = ids
        .par_iter()
        .map(|&id| body_record(config, id))
        .collect::<Result<Vec<_>>>()?;
    records.sort_by_key(|r| r.seed);
    Ok(records)
}

/// Worst margins over one batch.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BatchSummary {
    pub geometry: String,
    pub c: f64,
    pub kappa1: f64,
    pub kappa2: f64,
    pub family: Family,
    pub bodies: usize,
    pub violations: usize,
    pub worst_width_margin: f64,
    pub worst_outer_radius_margin: f64,
    pub worst_quotient_margin: Option<f64>,
    pub max_width: f64,
    pub max_quotient: f64,
}

pub fn summarize(config: &BatchConfig, records: &[BodyRecord]) -> BatchSummary {
    let max =
        |f: &dyn Fn(&BodyRecord) -> f64| records.iter().map(f).fold(f64::NEG_INFINITY, f64::max);
    let quotient_margins: Vec<f64> = records.iter().filter_map(|r| r.margins.quotient).collect();
    BatchSummary {
        geometry: config.pinch.curvature().label(),
        c: config.pinch.curvature().c(),
        kappa1: config.pinch.kappa1(),
        kappa2: config.pinch.kappa2(),
        family: config.family,
        bodies: records.len(),
        violations: records.iter().filter(|r| !r.satisfied.all()).count(),
        worst_width_margin: max(&|r| r.margins.width),
        worst_outer_radius_margin: max(&|r| r.margins.outer_radius),
        worst_quotient_margin: (!quotient_margins.is_empty()).then(|| {
            quotient_margins
                .iter()
                .cloned()
                .fold(f64::NEG_INFINITY, f64::max)
        }),
        max_width: max(&|r| r.width),
        max_quotient: max(&|r| r.quotient),
    }
}
