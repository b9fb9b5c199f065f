//! Planar convex curves given by their support function.
//!
//! A curve is stored through its radius of curvature `rho(theta)` as a
//! function of the outer normal angle; the support function solves
//! `h + h'' = rho` and the boundary point with normal `u(theta)` is
//! `h u + h' u_perp`.

use std::f64::consts::TAU;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::geometry::PinchSpec;
use crate::optimize::{golden_max, golden_min};
use crate::spindle::ProfileCurve;

/// Resolution of every direction grid used on support curves.
pub const GRID: usize = 2048;

/// Clearance kept between the generated curvature radii and `[R2, R1]`.
const GENERATOR_MARGIN: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
enum Shape {
    /// `rho = mean + sum_n (cos[n-2] cos(n t) + sin[n-2] sin(n t))`, `n >= 2`.
    Fourier {
        mean: f64,
        cos: Vec<f64>,
        sin: Vec<f64>,
    },
    /// Consecutive circular arcs covering the normal angles
    /// `[arcs[0].start, arcs[0].start + 2 pi)`.
    Arcs(Vec<SupportArc>),
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct SupportArc {
    start: f64,
    end: f64,
    radius: f64,
    center: [f64; 2],
}

/// A closed strictly convex planar curve.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportCurve {
    shape: Shape,
    offset: [f64; 2],
    phase: f64,
}

impl SupportCurve {
    /// Circle of radius `radius` about the origin.
    pub fn circle(radius: f64) -> Self {
        SupportCurve {
            shape: Shape::Fourier {
                mean: radius,
                cos: Vec::new(),
                sin: Vec::new(),
            },
            offset: [0.0, 0.0],
            phase: 0.0,
        }
    }

    /// Curve with curvature radius `mean + sum (a_n cos n t + b_n sin n t)`
    /// over modes `n = 2, 3, ...`.
    pub fn from_fourier(mean: f64, cos: Vec<f64>, sin: Vec<f64>) -> Result<Self> {
        if cos.len() != sin.len() {
            return Err(Error::Domain(
                "cosine and sine coefficient counts differ".to_owned(),
            ));
        }
        let curve = SupportCurve {
            shape: Shape::Fourier { mean, cos, sin },
            offset: [0.0, 0.0],
            phase: 0.0,
        };
        let rho_min = curve.radius_extremes().0;
        if rho_min.is_nan() || rho_min <= 0.0 {
            return Err(Error::Domain(format!(
                "curvature radius must stay positive (min {rho_min})"
            )));
        }
        Ok(curve)
    }

    /// Support curve of a flat arc-list profile (e.g. a flat spindle).
    pub fn from_profile(profile: &ProfileCurve) -> Result<Self> {
        if !profile.curvature_space().is_flat() {
            return Err(Error::UnsupportedGeometry(
                "support-function representation",
                profile.curvature_space().c(),
            ));
        }
        let arcs: Vec<SupportArc> = profile
            .segments()
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let c = profile.segment_center(i);
                let (start, end) = s.angles();
                // Local polar angle plus the frame's rotation is the normal angle.
                let turn = s.frame()[(1, 0)].atan2(s.frame()[(0, 0)]);
                SupportArc {
                    start: start + turn,
                    end: end + turn,
                    radius: s.radius(),
                    center: [c.x, c.y],
                }
            })
            .collect();
        let span: f64 = arcs.iter().map(|a| a.end - a.start).sum();
        if (span - TAU).abs() > 1e-9 {
            return Err(Error::Domain(format!(
                "arcs cover {span} radians of normals, not 2 pi"
            )));
        }
        // Re-chain the arcs so the angles increase monotonically.
        let mut chained = Vec::with_capacity(arcs.len());
        let mut at = arcs[0].start;
        for a in arcs {
            let len = a.end - a.start;
            chained.push(SupportArc {
                start: at,
                end: at + len,
                ..a
            });
            at += len;
        }
        Ok(SupportCurve {
            shape: Shape::Arcs(chained),
            offset: [0.0, 0.0],
            phase: 0.0,
        })
    }

    /// Translates the curve by `t`.
    pub fn translated(&self, t: [f64; 2]) -> Self {
        SupportCurve {
            offset: [self.offset[0] + t[0], self.offset[1] + t[1]],
            ..self.clone()
        }
    }

    /// Rotates the curve by `angle` about the origin.
    pub fn rotated(&self, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        let [x, y] = self.offset;
        SupportCurve {
            offset: [c * x - s * y, s * x + c * y],
            phase: self.phase + angle,
            ..self.clone()
        }
    }

    /// Scales the curve by `factor > 0` about the origin.
    pub fn scaled(&self, factor: f64) -> Self {
        let shape = match &self.shape {
            Shape::Fourier { mean, cos, sin } => Shape::Fourier {
                mean: mean * factor,
                cos: cos.iter().map(|v| v * factor).collect(),
                sin: sin.iter().map(|v| v * factor).collect(),
            },
            Shape::Arcs(arcs) => Shape::Arcs(
                arcs.iter()
                    .map(|a| SupportArc {
                        radius: a.radius * factor,
                        center: [a.center[0] * factor, a.center[1] * factor],
                        ..*a
                    })
                    .collect(),
            ),
        };
        SupportCurve {
            shape,
            offset: [self.offset[0] * factor, self.offset[1] * factor],
            phase: self.phase,
        }
    }

    /// Mean support value `h0`, the average of `h` over all directions.
    pub fn mean_support(&self) -> f64 {
        match &self.shape {
            Shape::Fourier { mean, .. } => *mean,
            Shape::Arcs(_) => {
                (0..GRID).map(|i| self.support(grid_angle(i))).sum::<f64>() / GRID as f64
            }
        }
    }

    fn arc_at(arcs: &[SupportArc], t: f64) -> &SupportArc {
        let t0 = arcs[0].start;
        let t = (t - t0).rem_euclid(TAU) + t0;
        let idx = arcs.partition_point(|a| a.end <= t);
        &arcs[idx.min(arcs.len() - 1)]
    }

    /// `(rho, h, h')` of the untransformed shape at normal angle `t`.
    fn base(&self, t: f64) -> (f64, f64, f64) {
        match &self.shape {
            Shape::Fourier { mean, cos, sin } => {
                let (mut rho, mut h, mut dh) = (*mean, *mean, 0.0);
                for (i, (a, b)) in cos.iter().zip(sin).enumerate() {
                    let n = (i + 2) as f64;
                    let (s, c) = (n * t).sin_cos();
                    let damp = 1.0 / (1.0 - n * n);
                    rho += a * c + b * s;
                    h += (a * c + b * s) * damp;
                    dh += n * (b * c - a * s) * damp;
                }
                (rho, h, dh)
            }
            Shape::Arcs(arcs) => {
                let a = Self::arc_at(arcs, t);
                let (s, c) = t.sin_cos();
                (
                    a.radius,
                    a.center[0] * c + a.center[1] * s + a.radius,
                    -a.center[0] * s + a.center[1] * c,
                )
            }
        }
    }

    /// Radius of curvature at the boundary point with outer normal angle `t`.
    pub fn radius_of_curvature(&self, t: f64) -> f64 {
        self.base(t - self.phase).0
    }

    pub fn support(&self, t: f64) -> f64 {
        let (s, c) = t.sin_cos();
        self.base(t - self.phase).1 + self.offset[0] * c + self.offset[1] * s
    }

    pub fn support_derivative(&self, t: f64) -> f64 {
        let (s, c) = t.sin_cos();
        self.base(t - self.phase).2 - self.offset[0] * s + self.offset[1] * c
    }

    /// Boundary point with outer normal `(cos t, sin t)`.
    pub fn boundary_point(&self, t: f64) -> [f64; 2] {
        let (_, h, dh) = self.base(t - self.phase);
        let (s, c) = t.sin_cos();
        [
            h * c - dh * s + self.offset[0],
            h * s + dh * c + self.offset[1],
        ]
    }

    /// Minimum and maximum radius of curvature.
    pub fn radius_extremes(&self) -> (f64, f64) {
        match &self.shape {
            Shape::Arcs(arcs) => arcs
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), a| {
                    (lo.min(a.radius), hi.max(a.radius))
                }),
            Shape::Fourier { .. } => {
                let (lo, hi) = refined_extremes(|t| self.radius_of_curvature(t));
                (lo.1, hi.1)
            }
        }
    }

    /// Grid angles where the radius of curvature leaves `[lo, hi]`.
    pub fn radius_violations(&self, lo: f64, hi: f64) -> Vec<f64> {
        let mut out: Vec<f64> = (0..GRID)
            .map(grid_angle)
            .filter(|&t| {
                let rho = self.radius_of_curvature(t);
                rho < lo || rho > hi
            })
            .collect();
        if out.is_empty() {
            if let Shape::Fourier { .. } = self.shape {
                let (min, max) = refined_extremes(|t| self.radius_of_curvature(t));
                for (t, v) in [min, max] {
                    if v < lo || v > hi {
                        out.push(t);
                    }
                }
            }
        }
        out
    }
}

pub(crate) fn grid_angle(i: usize) -> f64 {
    TAU * i as f64 / GRID as f64
}

/// Grid scan plus golden-section polish of the global minimum and maximum of
/// a smooth periodic function. Returns `((t_min, min), (t_max, max))`.
pub(crate) fn refined_extremes<F: Fn(f64) -> f64>(f: F) -> ((f64, f64), (f64, f64)) {
    let values: Vec<f64> = (0..GRID).map(|i| f(grid_angle(i))).collect();
    let step = TAU / GRID as f64;
    let (imin, imax) = values.iter().enumerate().fold((0, 0), |(lo, hi), (i, &v)| {
        (
            if v < values[lo] { i } else { lo },
            if v > values[hi] { i } else { hi },
        )
    });
    let tmin = grid_angle(imin);
    let tmax = grid_angle(imax);
    let min = golden_min(&f, tmin - step, tmin + step, 1e-13);
    let max = golden_max(&f, tmax - step, tmax + step, 1e-13);
    (
        if min.1 < values[imin] {
            min
        } else {
            (tmin, values[imin])
        },
        if max.1 > values[imax] {
            max
        } else {
            (tmax, values[imax])
        },
    )
}

/// Deterministic random `(kappa1, kappa2)`-pinched curve.
///
/// Modes `2..=modes` get normal coefficients damped by `1/n^2`; the mean
/// curvature radius is the midrange `(R1 + R2)/2` and the oscillation is
/// scaled to fit `[R2, R1]` with a small clearance. Mode 1 is absent so
/// the curve closes. Fewer than two modes, or a degenerate pinch, give the
/// midrange circle.
pub fn random_pinched_curve(pinch: &PinchSpec, seed: u64, modes: usize) -> Result<SupportCurve> {
    if !pinch.curvature().is_flat() {
        return Err(Error::UnsupportedGeometry(
            "random_pinched_curve",
            pinch.curvature().c(),
        ));
    }
    let mid = 0.5 * (pinch.r1() + pinch.r2());
    let half = 0.5 * (pinch.r1() - pinch.r2()) - GENERATOR_MARGIN;
    if modes < 2 || half <= 0.0 {
        return Ok(SupportCurve::circle(mid));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cos = Vec::with_capacity(modes - 1);
    let mut sin = Vec::with_capacity(modes - 1);
    for n in 2..=modes {
        let damp = 1.0 / (n * n) as f64;
        let a: f64 = StandardNormal.sample(&mut rng);
        let b: f64 = StandardNormal.sample(&mut rng);
        cos.push(a * damp);
        sin.push(b * damp);
    }
    // Zero-mean oscillation; not a valid curve on its own.
    let raw = SupportCurve {
        shape: Shape::Fourier {
            mean: 0.0,
            cos: cos.clone(),
            sin: sin.clone(),
        },
        offset: [0.0, 0.0],
        phase: 0.0,
    };
    let (lo, hi) = refined_extremes(|t| raw.radius_of_curvature(t));
    let amplitude = lo.1.abs().max(hi.1.abs());
    if amplitude == 0.0 {
        return Ok(SupportCurve::circle(mid));
    }
    let scale = half / amplitude;
    SupportCurve::from_fourier(
        mid,
        cos.iter().map(|v| v * scale).collect(),
        sin.iter().map(|v| v * scale).collect(),
    )
}
