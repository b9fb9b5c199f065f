//! Rounded spindle meridians: the extremal bodies for every shell bound.
//!
//! A spindle with inscribed radius `r~` is the lens cut out by two circular
//! arcs of curvature `kappa1` (radius `R1`) whose vertices are rounded off
//! by caps of curvature `kappa2` (radius `R2`) centred on the axis. With the
//! symmetry centre `O~` at the origin and the axis along `phi = 0`:
//!
//! * the main-arc centres sit at distance `R1 - r~` from `O~`,
//!   perpendicular to the axis;
//! * the cap centres sit on the axis at distance `d~`, where `(R1 - r~, d~)`
//!   are the legs of a right triangle with hypotenuse `R1 - R2`;
//! * the circumscribed radius is `R~ = d~ + R2`.
//!
//! Curves are stored as exact arc lists; sampling is derived from them.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::Serialize;

use crate::bounds::outer_radius_bound;
use crate::error::{Error, Result};
use crate::geometry::{
    curvature_from_sphere_radius, right_triangle_leg, PinchSpec, SpaceCurvature,
};
use crate::model::{Isometry, Model, Point, Tangent};
use crate::optimize::{golden_max, golden_min};

/// Which comparison curvature an arc carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ArcRole {
    /// Main (lens) arc, curvature `kappa1`.
    Main,
    /// Rounding cap, curvature `kappa2`.
    Cap,
}

impl ArcRole {
    pub fn label(self) -> &'static str {
        match self {
            ArcRole::Main => "kappa1",
            ArcRole::Cap => "kappa2",
        }
    }
}

/// Arc of a geodesic circle, parametrized by the polar angle `psi` in the
/// chart carried to the circle centre by `frame`.
#[derive(Debug, Clone, PartialEq)]
pub struct Arc {
    frame: Isometry,
    radius: f64,
    start: f64,
    end: f64,
    curvature: f64,
    role: ArcRole,
}

impl Arc {
    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Start and end angles, `start <= end`.
    pub fn angles(&self) -> (f64, f64) {
        (self.start, self.end)
    }

    pub fn curvature(&self) -> f64 {
        self.curvature
    }

    pub fn role(&self) -> ArcRole {
        self.role
    }

    pub fn frame(&self) -> &Isometry {
        &self.frame
    }

    pub fn point(&self, model: &Model, psi: f64) -> Point {
        self.frame * model.polar(self.radius, psi)
    }

    /// Unit tangent in the direction of traversal.
    pub fn tangent(&self, model: &Model, psi: f64) -> Tangent {
        self.frame * model.polar_angular(self.radius, psi)
    }

    /// Unit normal pointing away from the arc centre (out of the body).
    pub fn normal(&self, model: &Model, psi: f64) -> Tangent {
        self.frame * model.polar_radial(self.radius, psi)
    }

    /// Arc length.
    pub fn length(&self, model: &Model) -> f64 {
        model.curvature().sn(self.radius) * (self.end - self.start)
    }

    /// Geodesic distance from `x` to the closest and farthest points of the
    /// arc.
    pub fn distance_range(&self, model: &Model, inverse_frame: &Isometry, x: &Point) -> (f64, f64) {
        let (rho, psi) = model.to_polar(&(inverse_frame * x));
        let ends = [
            model.distance(x, &self.point(model, self.start)),
            model.distance(x, &self.point(model, self.end)),
        ];
        let (lo_end, hi_end) = (ends[0].min(ends[1]), ends[0].max(ends[1]));
        let near = if self.contains_angle(psi) {
            (self.radius - rho).abs()
        } else {
            lo_end
        };
        let far = if self.contains_angle(psi + PI) {
            self.radius + rho
        } else {
            hi_end
        };
        (near.min(lo_end), far.max(hi_end))
    }

    fn contains_angle(&self, psi: f64) -> bool {
        let t = (psi - self.start).rem_euclid(TAU);
        t <= self.end - self.start
    }
}

/// Closed C1 meridian made of constant-curvature arcs.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileCurve {
    model: Model,
    segments: Vec<Arc>,
    symmetry_center: Point,
}

/// One point of a sampled profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfileSample {
    #[serde(skip)]
    pub point: Point,
    /// Geodesic polar radius about the symmetry centre.
    pub rho: f64,
    /// Polar angle about the symmetry centre.
    pub phi: f64,
    pub role: ArcRole,
    pub curvature: f64,
    pub segment: usize,
    /// Angle parameter within the owning segment.
    #[serde(skip)]
    pub psi: f64,
}

impl ProfileCurve {
    fn new(model: Model, segments: Vec<Arc>, symmetry_center: Point) -> Self {
        ProfileCurve {
            model,
            segments,
            symmetry_center,
        }
    }

    pub fn model(&self) -> &Model {
        &self.model
    }

    pub fn curvature_space(&self) -> SpaceCurvature {
        self.model.curvature()
    }

    pub fn segments(&self) -> &[Arc] {
        &self.segments
    }

    pub fn symmetry_center(&self) -> Point {
        self.symmetry_center
    }

    /// Centre point of segment `i`.
    pub fn segment_center(&self, i: usize) -> Point {
        self.segments[i].frame * self.model.origin()
    }

    pub fn length(&self) -> f64 {
        self.segments.iter().map(|s| s.length(&self.model)).sum()
    }

    /// Applies an isometry to the whole curve.
    pub fn transformed(&self, iso: &Isometry) -> ProfileCurve {
        let segments = self
            .segments
            .iter()
            .map(|s| Arc {
                frame: iso * s.frame,
                ..s.clone()
            })
            .collect();
        ProfileCurve::new(self.model, segments, iso * self.symmetry_center)
    }

    /// Largest tangent mismatch across joins (ambient norm), including the
    /// closing join.
    pub fn max_join_defect(&self) -> (f64, f64) {
        let m = &self.model;
        let n = self.segments.len();
        let mut pos: f64 = 0.0;
        let mut tan: f64 = 0.0;
        for i in 0..n {
            let a = &self.segments[i];
            let b = &self.segments[(i + 1) % n];
            let (pa, pb) = (a.point(m, a.end), b.point(m, b.start));
            pos = pos.max(m.distance(&pa, &pb));
            let d = a.tangent(m, a.end) - b.tangent(m, b.start);
            tan = tan.max(m.inner(&d, &d).abs().sqrt());
        }
        (pos, tan)
    }

    /// Point at arc-length position `t` (wrapped to `[0, L)`), with its
    /// segment index and local angle.
    pub fn locate(&self, t: f64) -> (usize, f64) {
        let total = self.length();
        let mut t = t.rem_euclid(total);
        for (i, s) in self.segments.iter().enumerate() {
            let len = s.length(&self.model);
            if t < len || i + 1 == self.segments.len() {
                let psi = s.start + t / self.model.curvature().sn(s.radius);
                return (i, psi.min(s.end));
            }
            t -= len;
        }
        unreachable!("profile has at least one segment")
    }

    fn sample_at(&self, segment: usize, psi: f64) -> ProfileSample {
        let s = &self.segments[segment];
        let point = s.point(&self.model, psi);
        let (rho, phi) = self.polar_about_center(&point);
        ProfileSample {
            point,
            rho,
            phi,
            role: s.role,
            curvature: s.curvature,
            segment,
            psi,
        }
    }

    /// Geodesic polar coordinates of `p` about the symmetry centre, with the
    /// angle measured from the axis direction.
    pub fn polar_about_center(&self, p: &Point) -> (f64, f64) {
        let (rho_c, phi_c) = self.model.to_polar(&self.symmetry_center);
        let local = self.model.translation_inverse(rho_c, phi_c) * p;
        self.model.to_polar(&local)
    }
}

/// One-parameter spindle family member.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpindleSpec {
    pub pinch: PinchSpec,
    pub r_tilde: f64,
}

impl SpindleSpec {
    pub fn new(pinch: PinchSpec, r_tilde: f64) -> Result<Self> {
        let (r1, r2) = (pinch.r1(), pinch.r2());
        let slack = 1e-12 * r1;
        if !(r_tilde.is_finite() && r_tilde >= r2 - slack && r_tilde <= r1 + slack) {
            return Err(Error::Domain(format!(
                "r~ = {r_tilde} lies outside [R2, R1] = [{r2}, {r1}]"
            )));
        }
        Ok(SpindleSpec {
            pinch,
            r_tilde: r_tilde.clamp(r2, r1),
        })
    }
}

/// Metric data of a spindle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpindleGeometry {
    /// Circumscribed radius `R~`.
    pub r_outer: f64,
    /// Offset `d~ = R~ - R2` of the cap centres along the axis.
    pub d_tilde: f64,
    /// Distance from `O~` to a main-arc centre, `R1 - r~`.
    pub main_arc_center_offset: f64,
    /// Polar angle of the main-arc/cap join seen from `O~`.
    pub tangency_angle: f64,
}

/// Closed-form spindle radii `(r~, R~)`.
pub fn spindle_radii(spec: &SpindleSpec) -> Result<(f64, f64)> {
    Ok((spec.r_tilde, outer_radius_bound(&spec.pinch, spec.r_tilde)?))
}

pub fn spindle_geometry(spec: &SpindleSpec) -> Result<SpindleGeometry> {
    let (_, geometry) = rounded_profile(
        spec.pinch.curvature(),
        spec.pinch.r1(),
        spec.pinch.r2(),
        spec.pinch.r2(),
        spec.r_tilde,
    )?;
    Ok(geometry)
}

/// Builds the spindle meridian for `spec`.
pub fn build_spindle(spec: &SpindleSpec) -> Result<ProfileCurve> {
    rounded_profile(
        spec.pinch.curvature(),
        spec.pinch.r1(),
        spec.pinch.r2(),
        spec.pinch.r2(),
        spec.r_tilde,
    )
    .map(|(curve, _)| curve)
}

/// Generalized rounded lens: main arcs of radius `main_radius` and possibly
/// different caps on the negative (`left_cap`) and positive (`right_cap`)
/// ends of the axis. The returned geometry describes the right end.
pub fn rounded_profile(
    c: SpaceCurvature,
    main_radius: f64,
    left_cap: f64,
    right_cap: f64,
    r_tilde: f64,
) -> Result<(ProfileCurve, SpindleGeometry)> {
    let model = Model::new(c);
    let widest_cap = left_cap.max(right_cap);
    if !(left_cap > 0.0 && right_cap > 0.0 && widest_cap <= main_radius) {
        return Err(Error::Domain(format!(
            "cap radii ({left_cap}, {right_cap}) must be positive and at most the main radius {main_radius}"
        )));
    }
    if main_radius > c.max_convex_radius() {
        return Err(Error::Domain(format!(
            "main radius {main_radius} exceeds pi/(2k) = {}",
            c.max_convex_radius()
        )));
    }
    let slack = 1e-12 * main_radius;
    if !(r_tilde >= widest_cap - slack && r_tilde <= main_radius + slack) {
        return Err(Error::Domain(format!(
            "r~ = {r_tilde} lies outside [{widest_cap}, {main_radius}]"
        )));
    }
    let r_tilde = r_tilde.clamp(widest_cap, main_radius);
    let main_curvature = curvature_from_sphere_radius(c, main_radius)?;
    let origin = model.origin();

    let circle = |radius: f64, role: ArcRole| -> Result<ProfileCurve> {
        let arc = Arc {
            frame: Isometry::identity(),
            radius,
            start: 0.0,
            end: TAU,
            curvature: curvature_from_sphere_radius(c, radius)?,
            role,
        };
        Ok(ProfileCurve::new(model, vec![arc], origin))
    };
    let offset = main_radius - r_tilde;

    // Degenerate ends of the family collapse to a single circle.
    if offset <= 1e-15 * main_radius {
        let geometry = SpindleGeometry {
            r_outer: main_radius,
            d_tilde: main_radius - right_cap,
            main_arc_center_offset: 0.0,
            tangency_angle: 0.0,
        };
        return Ok((circle(main_radius, ArcRole::Main)?, geometry));
    }
    if left_cap == right_cap && r_tilde - right_cap <= 1e-15 * main_radius {
        let geometry = SpindleGeometry {
            r_outer: right_cap,
            d_tilde: 0.0,
            main_arc_center_offset: offset,
            tangency_angle: FRAC_PI_2,
        };
        return Ok((circle(right_cap, ArcRole::Cap)?, geometry));
    }

    let d_right = right_triangle_leg(c, main_radius - right_cap, offset)?;
    let d_left = right_triangle_leg(c, main_radius - left_cap, offset)?;

    let top_frame = model.translation(offset, -FRAC_PI_2);
    let bottom_frame = model.translation(offset, FRAC_PI_2);
    let right_frame = model.translation(d_right, 0.0);
    let left_frame = model.translation(d_left, PI);
    let top_center = top_frame * origin;
    let bottom_center = bottom_frame * origin;
    let right_center = right_frame * origin;
    let left_center = left_frame * origin;

    // Local polar angle at `from` (chart `frame_inv`) of the geodesic towards
    // `to`.
    let angle_to = |frame_inv: &Isometry, to: &Point| model.to_polar(&(frame_inv * to)).1;
    let top_inv = model.translation_inverse(offset, -FRAC_PI_2);
    let bottom_inv = model.translation_inverse(offset, FRAC_PI_2);
    let right_inv = model.translation_inverse(d_right, 0.0);
    let left_inv = model.translation_inverse(d_left, PI);

    let unwrap_after = |start: f64, end: f64| {
        let mut end = end;
        while end < start {
            end += TAU;
        }
        end
    };

    let cap_curvature = |r: f64| curvature_from_sphere_radius(c, r);

    // Right cap: from the bottom join to the top join, through psi = 0.
    let right_top = angle_to(&right_inv, &top_center) + PI;
    let right_bottom = angle_to(&right_inv, &bottom_center) + PI;
    let right_start = wrap_pi(right_bottom);
    let right_arc = Arc {
        frame: right_frame,
        radius: right_cap,
        start: right_start,
        end: unwrap_after(right_start, wrap_pi(right_top)),
        curvature: cap_curvature(right_cap)?,
        role: ArcRole::Cap,
    };

    let top_start = angle_to(&top_inv, &right_center);
    let top_arc = Arc {
        frame: top_frame,
        radius: main_radius,
        start: top_start,
        end: unwrap_after(top_start, angle_to(&top_inv, &left_center)),
        curvature: main_curvature,
        role: ArcRole::Main,
    };

    let left_start = wrap_pi(angle_to(&left_inv, &top_center) + PI).rem_euclid(TAU);
    let left_arc = Arc {
        frame: left_frame,
        radius: left_cap,
        start: left_start,
        end: unwrap_after(
            left_start,
            wrap_pi(angle_to(&left_inv, &bottom_center) + PI),
        ),
        curvature: cap_curvature(left_cap)?,
        role: ArcRole::Cap,
    };

    let bottom_start = angle_to(&bottom_inv, &left_center);
    let bottom_arc = Arc {
        frame: bottom_frame,
        radius: main_radius,
        start: bottom_start,
        end: unwrap_after(bottom_start, angle_to(&bottom_inv, &right_center)),
        curvature: main_curvature,
        role: ArcRole::Main,
    };

    let join = top_arc.point(&model, top_arc.start);
    let segments: Vec<Arc> = [right_arc, top_arc, left_arc, bottom_arc]
        .into_iter()
        .filter(|a| a.end - a.start > 1e-14)
        .collect();
    let geometry = SpindleGeometry {
        r_outer: d_right + right_cap,
        d_tilde: d_right,
        main_arc_center_offset: offset,
        tangency_angle: model.to_polar(&join).1,
    };
    Ok((ProfileCurve::new(model, segments, origin), geometry))
}

fn wrap_pi(a: f64) -> f64 {
    let w = (a + PI).rem_euclid(TAU) - PI;
    if w == -PI {
        PI
    } else {
        w
    }
}

/// `n` points equally spaced in arc length, starting at the first join and
/// traversing the closed curve once (the last point is not repeated).
pub fn sample_profile(profile: &ProfileCurve, n: usize) -> Vec<ProfileSample> {
    let total = profile.length();
    (0..n)
        .map(|i| {
            let (segment, psi) = profile.locate(total * i as f64 / n as f64);
            profile.sample_at(segment, psi)
        })
        .collect()
}

/// Minimum and maximum geodesic distance from the symmetry centre to the
/// profile, from `n` samples refined by golden-section search inside the
/// owning segment.
pub fn numeric_radii(profile: &ProfileCurve, n: usize) -> (f64, f64) {
    let n = n.max(8);
    let samples = sample_profile(profile, n);
    let center = profile.symmetry_center();
    let model = profile.model();
    let dist = |s: usize, psi: f64| model.distance(&center, &profile.segments[s].point(model, psi));
    let spacing = profile.length() / n as f64;

    let (imin, _) = samples
        .iter()
        .enumerate()
        .map(|(i, s)| (i, model.distance(&center, &s.point)))
        .fold(
            (0, f64::INFINITY),
            |acc, x| if x.1 < acc.1 { x } else { acc },
        );
    let (imax, _) = samples
        .iter()
        .enumerate()
        .map(|(i, s)| (i, model.distance(&center, &s.point)))
        .fold(
            (0, f64::NEG_INFINITY),
            |acc, x| if x.1 > acc.1 { x } else { acc },
        );

    // Refine inside each segment touched by the sample and its neighbours.
    let windows = |i: usize| {
        let mut out: Vec<(usize, f64, f64)> = Vec::new();
        for j in [(i + n - 1) % n, i, (i + 1) % n] {
            let s = &samples[j];
            let arc = &profile.segments[s.segment];
            let half = 1.5 * spacing / model.curvature().sn(arc.radius);
            let lo = (s.psi - half).max(arc.start);
            let hi = (s.psi + half).min(arc.end);
            out.push((s.segment, lo, hi));
        }
        out
    };
    let r_min = windows(imin)
        .into_iter()
        .map(|(s, lo, hi)| golden_min(|psi| dist(s, psi), lo, hi, 1e-13).1)
        .fold(f64::INFINITY, f64::min);
    let r_max = windows(imax)
        .into_iter()
        .map(|(s, lo, hi)| golden_max(|psi| dist(s, psi), lo, hi, 1e-13).1)
        .fold(f64::NEG_INFINITY, f64::max);
    (r_min, r_max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{quotient_bound, width_bound};
    use approx::assert_relative_eq;

    fn flat_spec(r: f64) -> SpindleSpec {
        SpindleSpec::new(PinchSpec::flat(1.0, 2.0).unwrap(), r).unwrap()
    }

    #[test]
    fn endpoint_circles() {
        let c = build_spindle(&flat_spec(1.0)).unwrap();
        assert_eq!(c.segments().len(), 1);
        assert_eq!(c.segments()[0].radius(), 1.0);
        assert_eq!(c.segments()[0].role(), ArcRole::Main);
        let c = build_spindle(&flat_spec(0.5)).unwrap();
        assert_eq!(c.segments().len(), 1);
        assert_eq!(c.segments()[0].radius(), 0.5);
        assert_eq!(c.segments()[0].role(), ArcRole::Cap);
    }

    #[test]
    fn flat_four_arc_profile() {
        let spec = flat_spec(0.75);
        let curve = build_spindle(&spec).unwrap();
        assert_eq!(curve.segments().len(), 4);
        let g = spindle_geometry(&spec).unwrap();
        assert_relative_eq!(g.d_tilde, 0.1875_f64.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(g.main_arc_center_offset, 0.25, max_relative = 1e-14);
        assert_relative_eq!(g.r_outer, 0.933_012_701_892_219_3, max_relative = 1e-14);
        let (r, big_r) = numeric_radii(&curve, 10_000);
        assert_relative_eq!(r, 0.75, epsilon = 1e-9);
        assert_relative_eq!(big_r, 0.933_012_701_892_219_3, epsilon = 1e-9);
        let (pos, tan) = curve.max_join_defect();
        assert!(pos < 1e-12 && tan < 1e-9, "{pos} {tan}");
        // Cap centres on the axis.
        for (i, s) in curve.segments().iter().enumerate() {
            if s.role() == ArcRole::Cap {
                assert!(curve.segment_center(i).y.abs() < 1e-15);
            }
        }
    }

    #[test]
    fn out_of_range_rejected() {
        let p = PinchSpec::flat(1.0, 2.0).unwrap();
        assert!(SpindleSpec::new(p, 0.4).is_err());
        assert!(SpindleSpec::new(p, 1.2).is_err());
        assert!(rounded_profile(SpaceCurvature::Flat, 1.0, 0.5, 0.5, 0.3).is_err());
    }

    #[test]
    fn radii_examples() {
        let (r, big_r) = spindle_radii(&flat_spec(0.646_446_609_406_726_2)).unwrap();
        assert_relative_eq!(big_r, 0.853_553_390_593_273_8, max_relative = 1e-12);
        assert_relative_eq!(big_r - r, 0.207_106_781_186_547_5, max_relative = 1e-12);
        let (r, big_r) = spindle_radii(&flat_spec(0.6)).unwrap();
        assert_relative_eq!(big_r, 0.8, max_relative = 1e-14);
        assert_relative_eq!(big_r / r, 4.0 / 3.0, max_relative = 1e-14);
        let s = PinchSpec::new(SpaceCurvature::spherical(1.0).unwrap(), 1.0, 2.0).unwrap();
        let (r, big_r) = spindle_radii(&SpindleSpec::new(s, s.r2()).unwrap()).unwrap();
        assert_eq!(r, s.r2());
        assert_relative_eq!(big_r, s.r2(), max_relative = 1e-15);
    }

    #[test]
    fn sampling_conventions() {
        let circle = build_spindle(&flat_spec(1.0)).unwrap();
        let pts = sample_profile(&circle, 4);
        assert_eq!(pts.len(), 4);
        for (i, p) in pts.iter().enumerate() {
            assert_eq!(p.role, ArcRole::Main);
            assert_relative_eq!(p.rho, 1.0, max_relative = 1e-15);
            let expected = i as f64 * FRAC_PI_2;
            assert_relative_eq!(wrap_pi(p.phi - expected), 0.0, epsilon = 1e-12);
        }
        let spindle = build_spindle(&flat_spec(0.75)).unwrap();
        let pts = sample_profile(&spindle, 8);
        assert_eq!(pts.len(), 8);
        // No duplicated endpoint: the first point differs from the last.
        assert!(spindle.model().distance(&pts[0].point, &pts[7].point) > 1e-3);
        for p in sample_profile(&spindle, 10_000) {
            assert!(p.rho >= 0.75 - 1e-12 && p.rho <= 0.933_012_701_892_219_3 + 1e-9);
        }
    }

    #[test]
    fn central_symmetry() {
        for c in [
            SpaceCurvature::Flat,
            SpaceCurvature::from_c(1.0).unwrap(),
            SpaceCurvature::from_c(-1.0).unwrap(),
        ] {
            let pinch = PinchSpec::new(c, 1.5, 3.0).unwrap();
            let spec = SpindleSpec::new(pinch, 0.5 * (pinch.r1() + pinch.r2())).unwrap();
            let curve = build_spindle(&spec).unwrap();
            let pts = sample_profile(&curve, 1000);
            let rot = curve.model().rotation(PI);
            for i in 0..500 {
                let image = rot * pts[i].point;
                assert!(curve.model().distance(&image, &pts[i + 500].point) < 1e-9);
            }
        }
    }

    #[test]
    fn spherical_width_maximizer_spindle() {
        let pinch = PinchSpec::new(SpaceCurvature::spherical(1.0).unwrap(), 1.0, 2.0).unwrap();
        let w = width_bound(&pinch);
        let curve = build_spindle(&SpindleSpec::new(pinch, w.maximizer_r).unwrap()).unwrap();
        let (r, big_r) = numeric_radii(&curve, 4000);
        assert_relative_eq!(big_r - r, 0.135_280_518_314_957_5, epsilon = 1e-6);
    }

    #[test]
    fn curved_right_triangle_holds_in_model() {
        for c in [
            SpaceCurvature::from_c(2.0).unwrap(),
            SpaceCurvature::from_c(-0.7).unwrap(),
        ] {
            let pinch = PinchSpec::new(c, 1.2, 4.0).unwrap();
            let spec = SpindleSpec::new(pinch, 0.3 * pinch.r1() + 0.7 * pinch.r2()).unwrap();
            let curve = build_spindle(&spec).unwrap();
            let m = curve.model();
            // Main-arc centre to cap centre equals R1 - R2 in the model metric.
            let main = curve
                .segments()
                .iter()
                .position(|s| s.role() == ArcRole::Main)
                .unwrap();
            let cap = curve
                .segments()
                .iter()
                .position(|s| s.role() == ArcRole::Cap)
                .unwrap();
            let d = m.distance(&curve.segment_center(main), &curve.segment_center(cap));
            assert_relative_eq!(d, pinch.r1() - pinch.r2(), max_relative = 1e-12);
            let (pos, tan) = curve.max_join_defect();
            assert!(pos < 1e-12 && tan < 1e-9);
        }
    }

    #[test]
    fn flat_quotient_at_r0() {
        let p = PinchSpec::flat(0.7, 3.1).unwrap();
        let q = quotient_bound(&p).unwrap();
        let curve = build_spindle(&SpindleSpec::new(p, q.maximizer_r).unwrap()).unwrap();
        let (r, big_r) = numeric_radii(&curve, 2000);
        assert_relative_eq!(big_r / r, q.bound, max_relative = 1e-8);
    }

    #[test]
    fn asymmetric_caps() {
        let (curve, g) = rounded_profile(SpaceCurvature::Flat, 1.0, 0.4, 0.6, 0.7).unwrap();
        assert_eq!(curve.segments().len(), 4);
        let (pos, tan) = curve.max_join_defect();
        assert!(pos < 1e-12 && tan < 1e-9);
        // The right end is described by the returned geometry.
        assert_relative_eq!(
            g.d_tilde,
            (0.4f64.powi(2) - 0.3f64.powi(2)).sqrt(),
            max_relative = 1e-14
        );
        // r~ equal to the wider cap centres that cap on O~ as a half circle.
        let (curve, g) = rounded_profile(SpaceCurvature::Flat, 1.0, 0.4, 0.6, 0.6).unwrap();
        assert_eq!(curve.segments().len(), 4);
        assert_eq!(g.d_tilde, 0.0);
        let (a, b) = curve.segments()[0].angles();
        assert_relative_eq!(b - a, PI, max_relative = 1e-14);
        let (pos, tan) = curve.max_join_defect();
        assert!(pos < 1e-12 && tan < 1e-9);
    }
}
