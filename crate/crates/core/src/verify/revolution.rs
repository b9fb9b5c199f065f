//! Bodies of revolution about the x-axis, described by an arc meridian.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{sphere_radius_from_curvature, PinchSpec, SpaceCurvature};
use crate::model::{Isometry, Model, Point, Tangent};
use crate::optimize::golden_max;
use crate::spindle::{build_spindle, rounded_profile, sample_profile, ProfileCurve, SpindleSpec};

/// A convex body of revolution whose meridian is symmetric about the x-axis
/// of the model plane. Only the meridian is stored.
#[derive(Debug, Clone)]
pub struct RevolutionBody {
    meridian: ProfileCurve,
    inverse_frames: Vec<Isometry>,
}

impl RevolutionBody {
    /// The meridian must be symmetric about the x-axis.
    pub fn new(meridian: ProfileCurve) -> Result<Self> {
        let inverse_frames = meridian
            .segments()
            .iter()
            .map(|s| {
                s.frame()
                    .try_inverse()
                    .ok_or_else(|| Error::Degenerate("singular arc frame".to_owned()))
            })
            .collect::<Result<Vec<_>>>()?;
        let center = meridian.symmetry_center();
        if center.y.abs() > 1e-12 * center.norm().max(1.0) {
            return Err(Error::Domain(
                "meridian symmetry center must lie on the axis".to_owned(),
            ));
        }
        Ok(RevolutionBody {
            meridian,
            inverse_frames,
        })
    }

    /// Spindle of `spec` as a body of revolution.
    pub fn spindle(spec: &SpindleSpec) -> Result<Self> {
        RevolutionBody::new(build_spindle(spec)?)
    }

    pub fn meridian(&self) -> &ProfileCurve {
        &self.meridian
    }

    pub fn model(&self) -> &Model {
        self.meridian.model()
    }

    pub fn space(&self) -> SpaceCurvature {
        self.meridian.curvature_space()
    }

    /// Extreme geodesic curvatures of the meridian arcs.
    pub fn curvature_range(&self) -> (f64, f64) {
        self.meridian
            .segments()
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), s| {
                (lo.min(s.curvature()), hi.max(s.curvature()))
            })
    }

    /// Polar angles (about the symmetry center) of the midpoints of arcs
    /// whose curvature leaves `[kappa1 - tol, kappa2 + tol]`.
    pub fn pinch_violations(&self, pinch: &PinchSpec, tol: f64) -> Vec<f64> {
        let model = self.model();
        self.meridian
            .segments()
            .iter()
            .filter(|s| {
                s.curvature() < pinch.kappa1() - tol || s.curvature() > pinch.kappa2() + tol
            })
            .map(|s| {
                let (a, b) = s.angles();
                self.meridian
                    .polar_about_center(&s.point(model, 0.5 * (a + b)))
                    .1
            })
            .collect()
    }

    /// Closest boundary point to `x`, its outer normal and the distance.
    pub fn nearest_boundary(&self, x: &Point) -> (Point, Tangent, f64) {
        let model = self.model();
        let mut best: Option<(Point, Tangent, f64)> = None;
        for (s, inv) in self.meridian.segments().iter().zip(&self.inverse_frames) {
            let (start, end) = s.angles();
            let (_, psi) = model.to_polar(&(inv * x));
            let inside = (psi - start).rem_euclid(TAU) <= end - start;
            let candidates: &[f64] = if inside { &[psi] } else { &[start, end] };
            for &a in candidates {
                let p = s.point(model, a);
                let d = model.distance(x, &p);
                if best.as_ref().is_none_or(|b| d < b.2) {
                    best = Some((p, s.normal(model, a), d));
                }
            }
        }
        best.expect("meridian has at least one arc")
    }

    /// Geodesic distance to the boundary, negative outside the body.
    pub fn signed_distance(&self, x: &Point) -> f64 {
        let (p, n, d) = self.nearest_boundary(x);
        if self.model().side(&p, &n, x) <= 0.0 {
            d
        } else {
            -d
        }
    }

    /// Largest distance from `x` to the boundary.
    pub fn farthest_distance(&self, x: &Point) -> f64 {
        let model = self.model();
        self.meridian
            .segments()
            .iter()
            .zip(&self.inverse_frames)
            .map(|(s, inv)| s.distance_range(model, inv, x).1)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Point of the axis at signed coordinate `s`.
    pub fn axis_point(&self, s: f64) -> Point {
        self.model().axis_translation(s) * self.model().origin()
    }

    /// Signed axis coordinate of an axis point.
    pub fn axis_coordinate(&self, p: &Point) -> f64 {
        let (rho, phi) = self.model().to_polar(p);
        if phi.abs() > 0.5 * PI {
            -rho
        } else {
            rho
        }
    }

    /// Derivative along the axis of the distance to the boundary at an
    /// interior axis point.
    fn axis_slope(&self, s: f64) -> f64 {
        let model = self.model();
        let x = self.axis_point(s);
        let (p, _, _) = self.nearest_boundary(&x);
        let along = model.axis_translation(s) * Tangent::new(1.0, 0.0, 0.0);
        -model.inner(&model.direction(&x, &p), &along)
    }

    /// Inscribed ball with its center constrained to the axis.
    pub fn inscribed_ball(&self) -> (Point, f64) {
        let c = self.meridian.symmetry_center();
        let reach = self.farthest_distance(&c);
        let xc = self.axis_coordinate(&c);
        let (s, _) = golden_max(
            |s| self.signed_distance(&self.axis_point(s)),
            xc - reach,
            xc + reach,
            1e-9 * reach.max(1e-300),
        );
        // The maximum is flat to second order; bisect on the slope sign.
        let (mut lo, mut hi) = (s - 1e-6 * reach, s + 1e-6 * reach);
        let s = if self.axis_slope(lo) > 0.0 && self.axis_slope(hi) < 0.0 {
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                if hi - lo <= 1e-15 * reach || mid <= lo || mid >= hi {
                    break;
                }
                if self.axis_slope(mid) > 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            0.5 * (lo + hi)
        } else {
            s
        };
        let center = self.axis_point(s);
        (center, self.signed_distance(&center))
    }

    pub fn circumscribed_from_center(&self, center: &Point) -> Result<f64> {
        let depth = self.signed_distance(center);
        if depth.is_nan() || depth <= 0.0 {
            return Err(Error::Domain(
                "center is not interior to the body".to_owned(),
            ));
        }
        Ok(self.farthest_distance(center))
    }

    /// Blaschke rolling test at `samples` boundary points: the inner tangent
    /// disc of radius `R2` (512 probe points) lies in the body and 512
    /// boundary samples lie in the outer tangent disc of radius `R1`.
    pub fn rolling_check(&self, pinch: &PinchSpec, samples: usize) -> bool {
        const PROBES: usize = 512;
        let model = self.model();
        let tol = 1e-9 * pinch.r1().max(1.0);
        let boundary: Vec<Point> = sample_profile(&self.meridian, PROBES)
            .iter()
            .map(|s| s.point)
            .collect();
        sample_profile(&self.meridian, samples).iter().all(|s| {
            let n = self.meridian.segments()[s.segment].normal(model, s.psi);
            let inner = model.exp(&s.point, &(-n), pinch.r2());
            let (ri, pi) = model.to_polar(&inner);
            let to_inner = model.translation(ri, pi);
            let inner_ok = (0..PROBES).all(|j| {
                let q = to_inner * model.polar(pinch.r2(), TAU * j as f64 / PROBES as f64);
                self.signed_distance(&q) >= -tol
            });
            let outer = model.exp(&s.point, &(-n), pinch.r1());
            let outer_ok = boundary
                .iter()
                .all(|b| model.distance(&outer, b) <= pinch.r1() + tol);
            inner_ok && outer_ok
        })
    }
}

/// Deterministic random rounded lens of revolution pinched by `pinch`.
///
/// Main arcs of curvature `ka` and end caps of curvatures `kb`, `kc` are drawn
/// in `[kappa1, kappa2]` with `ka <= kb, kc`; the inscribed parameter is drawn
/// between the wider cap and the main radius, and the body is shifted along
/// the axis.
pub fn random_revolution_body(pinch: &PinchSpec, seed: u64) -> Result<RevolutionBody> {
    let c = pinch.curvature();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (k1, k2) = (pinch.kappa1(), pinch.kappa2());
    let ka = k1 + (k2 - k1) * 0.5 * rng.random::<f64>().powi(2);
    let kb = ka + (k2 - ka) * rng.random::<f64>();
    let kc = ka + (k2 - ka) * rng.random::<f64>();
    let ra = sphere_radius_from_curvature(c, ka)?;
    let rb = sphere_radius_from_curvature(c, kb)?;
    let rc = sphere_radius_from_curvature(c, kc)?;
    let widest = rb.max(rc);
    let r_tilde = widest + (ra - widest) * rng.random::<f64>();
    let shift = (rng.random::<f64>() - 0.5) * pinch.r1().min(c.max_convex_radius());
    let (profile, _) = rounded_profile(c, ra, rb, rc, r_tilde)?;
    let model = Model::new(c);
    RevolutionBody::new(profile.transformed(&model.axis_translation(shift)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::outer_radius_bound;
    use approx::assert_relative_eq;

    fn pinches() -> Vec<PinchSpec> {
        vec![
            PinchSpec::flat(1.0, 2.0).unwrap(),
            PinchSpec::new(SpaceCurvature::from_c(1.0).unwrap(), 1.0, 2.0).unwrap(),
            PinchSpec::new(SpaceCurvature::from_c(-1.0).unwrap(), 2.0, 3.0).unwrap(),
        ]
    }

    #[test]
    fn spindle_ball_is_symmetry_center() {
        let spec = SpindleSpec::new(PinchSpec::flat(1.0, 2.0).unwrap(), 0.75).unwrap();
        let body = RevolutionBody::spindle(&spec).unwrap();
        let (o, r) = body.inscribed_ball();
        assert!(o.x.abs() < 1e-9 && o.y == 0.0);
        assert_relative_eq!(r, 0.75, max_relative = 1e-12);
        let big = body.circumscribed_from_center(&o).unwrap();
        assert_relative_eq!(big, 0.9330127018922193, max_relative = 1e-9);
    }

    #[test]
    fn signed_distance_sign() {
        for p in pinches() {
            let body = random_revolution_body(&p, 3).unwrap();
            let c = body.meridian().symmetry_center();
            assert!(body.signed_distance(&c) > 0.0);
            let far = body.axis_point(body.axis_coordinate(&c) + 2.0 * body.farthest_distance(&c));
            assert!(body.signed_distance(&far) < 0.0);
            assert!(body.circumscribed_from_center(&far).is_err());
        }
    }

    #[test]
    fn random_bodies_are_pinched_and_obey_outer_bound() {
        for p in pinches() {
            for seed in 0..20 {
                let body = random_revolution_body(&p, seed).unwrap();
                assert!(body.pinch_violations(&p, 1e-8).is_empty());
                let (o, r) = body.inscribed_ball();
                let big = body.circumscribed_from_center(&o).unwrap();
                let bound = outer_radius_bound(&p, r.clamp(p.r2(), p.r1())).unwrap();
                assert!(big <= bound + 1e-7, "{p:?} seed {seed}: {big} > {bound}");
            }
        }
    }

    #[test]
    fn rolling_detects_wrong_pinch() {
        for p in pinches() {
            let body =
                RevolutionBody::spindle(&SpindleSpec::new(p, 0.5 * (p.r1() + p.r2())).unwrap())
                    .unwrap();
            assert!(body.rolling_check(&p, 40));
            let tighter =
                PinchSpec::new(p.curvature(), 0.5 * (p.kappa1() + p.kappa2()), p.kappa2()).unwrap();
            assert!(!body.rolling_check(&tighter, 40));
        }
    }
}
