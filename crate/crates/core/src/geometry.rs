//! Primitives of the three two-point homogeneous model planes `M(c)`:
//! curvature admissibility, geodesic-circle radius and curvature
//! conversions, and the law of cosines in each geometry.
//!
//! Trigonometric relations are evaluated in half-angle (haversine) form so
//! that short geodesics and small `k` keep full relative precision.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance used when clamping a recovered cosine (or half-angle sine)
/// back into its range.
const CLAMP_SLACK: f64 = 1e-12;

/// Sectional curvature `c` of the ambient space, classified by sign.
///
/// `k = sqrt(|c|)` is strictly positive for the curved classes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "lowercase")]
pub enum SpaceCurvature {
    Flat,
    Spherical { k: f64 },
    Hyperbolic { k: f64 },
}

impl SpaceCurvature {
    pub fn flat() -> Self {
        SpaceCurvature::Flat
    }

    pub fn spherical(k: f64) -> Result<Self> {
        check_k(k)?;
        Ok(SpaceCurvature::Spherical { k })
    }

    pub fn hyperbolic(k: f64) -> Result<Self> {
        check_k(k)?;
        Ok(SpaceCurvature::Hyperbolic { k })
    }

    /// Classifies a raw sectional curvature value.
    pub fn from_c(c: f64) -> Result<Self> {
        if !c.is_finite() {
            return Err(Error::Domain(format!("curvature must be finite, got {c}")));
        }
        if c == 0.0 {
            Ok(SpaceCurvature::Flat)
        } else if c > 0.0 {
            Self::spherical(c.sqrt())
        } else {
            Self::hyperbolic((-c).sqrt())
        }
    }

    /// Sectional curvature `c`.
    pub fn c(&self) -> f64 {
        match *self {
            SpaceCurvature::Flat => 0.0,
            SpaceCurvature::Spherical { k } => k * k,
            SpaceCurvature::Hyperbolic { k } => -k * k,
        }
    }

    /// `sqrt(|c|)`, zero for flat space.
    pub fn k(&self) -> f64 {
        match *self {
            SpaceCurvature::Flat => 0.0,
            SpaceCurvature::Spherical { k } | SpaceCurvature::Hyperbolic { k } => k,
        }
    }

    pub fn is_flat(&self) -> bool {
        matches!(self, SpaceCurvature::Flat)
    }

    /// Short label used in reports.
    pub fn label(&self) -> String {
        match *self {
            SpaceCurvature::Flat => "flat".to_owned(),
            SpaceCurvature::Spherical { k } => format!("spherical({k})"),
            SpaceCurvature::Hyperbolic { k } => format!("hyperbolic({k})"),
        }
    }

    /// Generalized sine `sn(t)`: `t`, `sin(kt)/k` or `sinh(kt)/k`.
    ///
    /// A geodesic circle of radius `t` has circumference `2 pi sn(t)`.
    pub fn sn(&self, t: f64) -> f64 {
        match *self {
            SpaceCurvature::Flat => t,
            SpaceCurvature::Spherical { k } => (k * t).sin() / k,
            SpaceCurvature::Hyperbolic { k } => (k * t).sinh() / k,
        }
    }

    /// Largest geodesic radius a circle of nonnegative curvature may have
    /// (`pi / (2k)` on the sphere, unbounded otherwise).
    pub fn max_convex_radius(&self) -> f64 {
        match *self {
            SpaceCurvature::Spherical { k } => FRAC_PI_2 / k,
            _ => f64::INFINITY,
        }
    }
}

fn check_k(k: f64) -> Result<()> {
    if k.is_finite() && k > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("k must be finite and > 0, got {k}")))
    }
}

/// Returns a description of the first violated admissibility condition, if
/// any.
fn admissibility_violation(c: SpaceCurvature, kappa1: f64, kappa2: f64) -> Option<String> {
    if !(kappa1.is_finite() && kappa2.is_finite()) {
        return Some(format!(
            "curvatures must be finite (kappa1 = {kappa1}, kappa2 = {kappa2})"
        ));
    }
    if kappa2 < kappa1 {
        return Some(format!(
            "kappa2 >= kappa1 is required (kappa1 = {kappa1}, kappa2 = {kappa2})"
        ));
    }
    match c {
        SpaceCurvature::Flat if kappa1 <= 0.0 => Some(format!(
            "flat space requires kappa1 > 0 (kappa1 = {kappa1})"
        )),
        SpaceCurvature::Spherical { .. } if kappa1 < 0.0 => Some(format!(
            "spherical space requires kappa1 >= 0 (kappa1 = {kappa1})"
        )),
        SpaceCurvature::Hyperbolic { k } if kappa1 <= k => Some(format!(
            "hyperbolic space with c = {} requires kappa1 > sqrt(-c) = {k} (kappa1 = {kappa1})",
            c.c()
        )),
        _ => None,
    }
}

/// True iff `(kappa1, kappa2)` is an admissible pinch in the space `c`.
pub fn admissible(c: SpaceCurvature, kappa1: f64, kappa2: f64) -> bool {
    admissibility_violation(c, kappa1, kappa2).is_none()
}

/// Geodesic radius of a circle (sphere) of normal curvature `kappa`.
///
/// `1/kappa` in flat space, `arccot(kappa/k)/k` on the sphere (with
/// `arccot` valued in `(0, pi/2]`) and `arccoth(kappa/k)/k` in hyperbolic
/// space.
pub fn sphere_radius_from_curvature(c: SpaceCurvature, kappa: f64) -> Result<f64> {
    if let Some(why) = admissibility_violation(c, kappa, kappa) {
        return Err(Error::Domain(why));
    }
    Ok(match c {
        SpaceCurvature::Flat => 1.0 / kappa,
        // atan2(k, kappa) = arccot(kappa/k) on (0, pi/2] for kappa >= 0.
        SpaceCurvature::Spherical { k } => k.atan2(kappa) / k,
        SpaceCurvature::Hyperbolic { k } => (k / kappa).atanh() / k,
    })
}

/// Normal curvature of a geodesic circle of radius `radius`; inverse of
/// [`sphere_radius_from_curvature`].
pub fn curvature_from_sphere_radius(c: SpaceCurvature, radius: f64) -> Result<f64> {
    if !(radius.is_finite() && radius > 0.0) {
        return Err(Error::Domain(format!(
            "radius must be finite and > 0, got {radius}"
        )));
    }
    Ok(match c {
        SpaceCurvature::Flat => 1.0 / radius,
        SpaceCurvature::Spherical { k } => {
            let half = FRAC_PI_2 / k;
            if radius > half {
                return Err(Error::Domain(format!(
                    "radius {radius} exceeds the hemisphere radius pi/(2k) = {half}"
                )));
            }
            if radius == half {
                0.0
            } else {
                k / (k * radius).tan()
            }
        }
        SpaceCurvature::Hyperbolic { k } => k / (k * radius).tanh(),
    })
}

fn check_length(name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "{name} must be finite and >= 0, got {value}"
        )))
    }
}

fn check_spherical_side(c: SpaceCurvature, name: &str, value: f64) -> Result<()> {
    if let SpaceCurvature::Spherical { k } = c {
        if value >= PI / k {
            return Err(Error::Domain(format!(
                "{name} = {value} must be below pi/k = {}",
                PI / k
            )));
        }
    }
    Ok(())
}

/// Side opposite the angle `gamma` in a geodesic triangle with adjacent sides
/// `a` and `b`.
pub fn law_of_cosines_side(c: SpaceCurvature, a: f64, b: f64, gamma: f64) -> Result<f64> {
    check_length("a", a)?;
    check_length("b", b)?;
    if !(0.0..=PI).contains(&gamma) {
        return Err(Error::Domain(format!(
            "gamma must lie in [0, pi], got {gamma}"
        )));
    }
    check_spherical_side(c, "a", a)?;
    check_spherical_side(c, "b", b)?;

    let hav = (0.5 * gamma).sin().powi(2);
    Ok(match c {
        SpaceCurvature::Flat => ((a - b).powi(2) + 4.0 * a * b * hav).sqrt(),
        SpaceCurvature::Spherical { k } => {
            let s = (0.5 * k * (a - b)).sin().powi(2) + (k * a).sin() * (k * b).sin() * hav;
            2.0 * s.clamp(0.0, 1.0).sqrt().asin() / k
        }
        SpaceCurvature::Hyperbolic { k } => {
            let s = (0.5 * k * (a - b)).sinh().powi(2) + (k * a).sinh() * (k * b).sinh() * hav;
            2.0 * s.max(0.0).sqrt().asinh() / k
        }
    })
}

/// Angle between sides `a` and `b` of a geodesic triangle whose third side
/// is `d`.
pub fn law_of_cosines_angle(c: SpaceCurvature, a: f64, b: f64, d: f64) -> Result<f64> {
    for (name, v) in [("a", a), ("b", b)] {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::Domain(format!(
                "{name} must be finite and > 0, got {v}"
            )));
        }
    }
    check_length("d", d)?;
    check_spherical_side(c, "a", a)?;
    check_spherical_side(c, "b", b)?;

    // sin^2(gamma/2), the half-angle form of the cosine rule.
    let hav = match c {
        SpaceCurvature::Flat => (d * d - (a - b).powi(2)) / (4.0 * a * b),
        SpaceCurvature::Spherical { k } => {
            ((0.5 * k * d).sin().powi(2) - (0.5 * k * (a - b)).sin().powi(2))
                / ((k * a).sin() * (k * b).sin())
        }
        SpaceCurvature::Hyperbolic { k } => {
            ((0.5 * k * d).sinh().powi(2) - (0.5 * k * (a - b)).sinh().powi(2))
                / ((k * a).sinh() * (k * b).sinh())
        }
    };
    // cos(gamma) = 1 - 2 hav, so the cosine slack maps to half of it here.
    let slack = 0.5 * CLAMP_SLACK;
    if !(-slack..=1.0 + slack).contains(&hav) {
        return Err(Error::Domain(format!(
            "sides ({a}, {b}, {d}) violate the triangle inequality in {}",
            c.label()
        )));
    }
    Ok(2.0 * hav.clamp(0.0, 1.0).sqrt().asin())
}

/// Remaining leg of a geodesic right triangle with hypotenuse `hyp` and leg
/// `leg`: the `x` solving the Pythagorean relation `x^2 = hyp^2 - leg^2`,
/// `cos(kx) = cos(k hyp)/cos(k leg)` or `cosh(kx) = cosh(k hyp)/cosh(k leg)`.
pub fn right_triangle_leg(c: SpaceCurvature, hyp: f64, leg: f64) -> Result<f64> {
    check_length("hypotenuse", hyp)?;
    check_length("leg", leg)?;
    if leg > hyp {
        return Err(Error::Domain(format!("leg {leg} exceeds hypotenuse {hyp}")));
    }
    Ok(match c {
        SpaceCurvature::Flat => ((hyp - leg) * (hyp + leg)).sqrt(),
        SpaceCurvature::Spherical { k } => {
            if k * hyp >= FRAC_PI_2 {
                return Err(Error::Domain(format!(
                    "hypotenuse {hyp} must be below pi/(2k) = {}",
                    FRAC_PI_2 / k
                )));
            }
            // 1 - cos(kx) = 2 sin(k(h+l)/2) sin(k(h-l)/2) / cos(kl)
            let s = (0.5 * k * (hyp + leg)).sin() * (0.5 * k * (hyp - leg)).sin() / (k * leg).cos();
            2.0 * s.clamp(0.0, 1.0).sqrt().asin() / k
        }
        SpaceCurvature::Hyperbolic { k } => {
            let s =
                (0.5 * k * (hyp + leg)).sinh() * (0.5 * k * (hyp - leg)).sinh() / (k * leg).cosh();
            2.0 * s.max(0.0).sqrt().asinh() / k
        }
    })
}

/// An admissible curvature pinch `kappa1 <= k_n <= kappa2` in a fixed space,
/// with the radii `R1 >= R2` of the geodesic circles of curvature `kappa1`
/// and `kappa2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PinchSpec {
    curvature: SpaceCurvature,
    kappa1: f64,
    kappa2: f64,
    r1: f64,
    r2: f64,
}

impl PinchSpec {
    pub fn new(curvature: SpaceCurvature, kappa1: f64, kappa2: f64) -> Result<Self> {
        if let Some(why) = admissibility_violation(curvature, kappa1, kappa2) {
            return Err(Error::Inadmissible(why));
        }
        let r1 = sphere_radius_from_curvature(curvature, kappa1)?;
        let r2 = sphere_radius_from_curvature(curvature, kappa2)?;
        Ok(PinchSpec {
            curvature,
            kappa1,
            kappa2,
            r1,
            r2,
        })
    }

    /// Euclidean shorthand.
    pub fn flat(kappa1: f64, kappa2: f64) -> Result<Self> {
        Self::new(SpaceCurvature::Flat, kappa1, kappa2)
    }

    pub fn curvature(&self) -> SpaceCurvature {
        self.curvature
    }

    pub fn kappa1(&self) -> f64 {
        self.kappa1
    }

    pub fn kappa2(&self) -> f64 {
        self.kappa2
    }

    /// Radius of the outer comparison circle (curvature `kappa1`).
    pub fn r1(&self) -> f64 {
        self.r1
    }

    /// Radius of the inner comparison circle (curvature `kappa2`).
    pub fn r2(&self) -> f64 {
        self.r2
    }

    pub fn is_degenerate(&self) -> bool {
        self.kappa1 == self.kappa2
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn sph(k: f64) -> SpaceCurvature {
        SpaceCurvature::spherical(k).unwrap()
    }

    fn hyp(k: f64) -> SpaceCurvature {
        SpaceCurvature::hyperbolic(k).unwrap()
    }

    #[test]
    fn admissibility_examples() {
        assert!(admissible(SpaceCurvature::Flat, 1.0, 2.0));
        assert!(!admissible(SpaceCurvature::Flat, 0.0, 1.0));
        assert!(!admissible(hyp(1.0), 1.0, 2.0));
        assert!(admissible(hyp(1.0), 1.0 + 1e-9, 2.0));
        assert!(admissible(sph(1.0), 0.0, 2.0));
        assert!(!admissible(sph(1.0), -0.1, 2.0));
        assert!(!admissible(SpaceCurvature::Flat, 2.0, 1.0));
        assert!(!admissible(SpaceCurvature::Flat, 1.0, f64::NAN));
    }

    #[test]
    fn pinch_rejects_with_named_condition() {
        let err = PinchSpec::new(hyp(1.0), 1.0, 2.0).unwrap_err();
        assert!(matches!(err, Error::Inadmissible(ref m) if m.contains("sqrt(-c)")));
        let err = PinchSpec::flat(0.0, 1.0).unwrap_err();
        assert!(matches!(err, Error::Inadmissible(ref m) if m.contains("kappa1 > 0")));
    }

    #[test]
    fn from_c_classifies() {
        assert_eq!(SpaceCurvature::from_c(0.0).unwrap(), SpaceCurvature::Flat);
        assert_eq!(SpaceCurvature::from_c(4.0).unwrap(), sph(2.0));
        assert_eq!(SpaceCurvature::from_c(-0.25).unwrap(), hyp(0.5));
        assert_eq!(sph(2.0).c(), 4.0);
        assert_eq!(hyp(0.5).c(), -0.25);
    }

    #[test]
    fn sphere_radius_examples() {
        assert_eq!(
            sphere_radius_from_curvature(SpaceCurvature::Flat, 2.0).unwrap(),
            0.5
        );
        assert_relative_eq!(
            sphere_radius_from_curvature(sph(1.0), 1.0).unwrap(),
            std::f64::consts::FRAC_PI_4,
            max_relative = 1e-15
        );
        // arccoth(2) = ln(3)/2, mpmath: 0.5493061443340548456976...
        assert_relative_eq!(
            sphere_radius_from_curvature(hyp(1.0), 2.0).unwrap(),
            0.549_306_144_334_054_8,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            sphere_radius_from_curvature(sph(1.0), 0.0).unwrap(),
            FRAC_PI_2,
            max_relative = 1e-15
        );
        assert!(sphere_radius_from_curvature(hyp(1.0), 0.5).is_err());
        assert!(sphere_radius_from_curvature(SpaceCurvature::Flat, 0.0).is_err());
    }

    #[test]
    fn curvature_from_radius_examples() {
        assert_eq!(
            curvature_from_sphere_radius(SpaceCurvature::Flat, 0.5).unwrap(),
            2.0
        );
        assert_relative_eq!(
            curvature_from_sphere_radius(sph(1.0), std::f64::consts::FRAC_PI_4).unwrap(),
            1.0,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            curvature_from_sphere_radius(hyp(1.0), 0.549_306_144_334_054_8).unwrap(),
            2.0,
            max_relative = 1e-14
        );
        assert_eq!(
            curvature_from_sphere_radius(sph(1.0), FRAC_PI_2).unwrap(),
            0.0
        );
        assert!(curvature_from_sphere_radius(sph(1.0), 1.6).is_err());
        assert!(curvature_from_sphere_radius(SpaceCurvature::Flat, 0.0).is_err());
        assert!(curvature_from_sphere_radius(SpaceCurvature::Flat, -1.0).is_err());
    }

    #[test]
    fn flat_limit_of_radius() {
        let kappa = 1.7;
        for k in [1e-3, 1e-5] {
            for c in [sph(k), hyp(k)] {
                let r = sphere_radius_from_curvature(c, kappa).unwrap();
                // Leading correction is k^2 / (3 kappa^3).
                assert!((r - 1.0 / kappa).abs() <= k * k / kappa.powi(3));
            }
        }
    }

    #[test]
    fn law_of_cosines_side_examples() {
        let flat = SpaceCurvature::Flat;
        assert_relative_eq!(
            law_of_cosines_side(flat, 3.0, 4.0, FRAC_PI_2).unwrap(),
            5.0,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            law_of_cosines_side(sph(1.0), 1.1, 0.3, 0.0).unwrap(),
            0.8,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            law_of_cosines_side(hyp(1.0), 0.5, 0.5, PI).unwrap(),
            1.0,
            max_relative = 1e-14
        );
        assert!(law_of_cosines_side(flat, -1.0, 1.0, 1.0).is_err());
        assert!(law_of_cosines_side(flat, 1.0, 1.0, 4.0).is_err());
        assert!(law_of_cosines_side(sph(1.0), 3.2, 1.0, 1.0).is_err());
    }

    #[test]
    fn law_of_cosines_matches_cosine_form() {
        // Direct (unstable) cosine rule as an independent route.
        let (a, b, g) = (0.7, 1.3, 2.1);
        let s = law_of_cosines_side(sph(0.8), a, b, g).unwrap();
        let k = 0.8;
        let direct =
            ((k * a).cos() * (k * b).cos() + (k * a).sin() * (k * b).sin() * g.cos()).acos() / k;
        assert_relative_eq!(s, direct, max_relative = 1e-12);
        let h = law_of_cosines_side(hyp(0.8), a, b, g).unwrap();
        let direct = ((k * a).cosh() * (k * b).cosh() - (k * a).sinh() * (k * b).sinh() * g.cos())
            .acosh()
            / k;
        assert_relative_eq!(h, direct, max_relative = 1e-12);
    }

    #[test]
    fn law_of_cosines_angle_examples() {
        let flat = SpaceCurvature::Flat;
        assert_relative_eq!(
            law_of_cosines_angle(flat, 3.0, 4.0, 5.0).unwrap(),
            FRAC_PI_2,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            law_of_cosines_angle(flat, 1.0, 1.0, 1.0).unwrap(),
            PI / 3.0,
            max_relative = 1e-14
        );
        let d = law_of_cosines_side(sph(1.0), 0.4, 0.5, 1.0).unwrap();
        assert_relative_eq!(
            law_of_cosines_angle(sph(1.0), 0.4, 0.5, d).unwrap(),
            1.0,
            max_relative = 1e-12
        );
        assert!(law_of_cosines_angle(flat, 1.0, 1.0, 2.5).is_err());
        assert!(law_of_cosines_angle(flat, 1.0, 3.0, 1.0).is_err());
        // Degenerate triangles clamp instead of erroring.
        assert_relative_eq!(
            law_of_cosines_angle(flat, 1.0, 1.0, 2.0).unwrap(),
            PI,
            max_relative = 1e-12
        );
        assert_eq!(law_of_cosines_angle(flat, 1.0, 1.0, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn right_triangle_leg_matches_law_of_cosines() {
        for c in [SpaceCurvature::Flat, sph(1.3), hyp(0.7)] {
            let (a, b) = (0.41, 0.27);
            let hyp_len = law_of_cosines_side(c, a, b, FRAC_PI_2).unwrap();
            assert_relative_eq!(
                right_triangle_leg(c, hyp_len, a).unwrap(),
                b,
                max_relative = 1e-12
            );
        }
        assert!(right_triangle_leg(SpaceCurvature::Flat, 1.0, 2.0).is_err());
    }

    #[test]
    fn law_of_cosines_flat_limit() {
        let (a, b, g) = (0.9, 0.6, 1.2);
        let e = law_of_cosines_side(SpaceCurvature::Flat, a, b, g).unwrap();
        for k in [1e-2, 1e-3] {
            for c in [sph(k), hyp(k)] {
                let d = law_of_cosines_side(c, a, b, g).unwrap();
                assert!((d - e).abs() <= k * k, "k = {k}: {d} vs {e}");
            }
        }
    }

    fn geometry() -> impl Strategy<Value = SpaceCurvature> {
        prop_oneof![
            Just(SpaceCurvature::Flat),
            (0.1f64..3.0).prop_map(sph),
            (0.1f64..3.0).prop_map(hyp),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn radius_round_trip(c in geometry(), t in 0.0f64..1.0) {
            // Map t onto the admissible curvature range of each geometry.
            let kappa = match c {
                SpaceCurvature::Flat => 0.05 + 20.0 * t,
                SpaceCurvature::Spherical { k } => 20.0 * k * t,
                SpaceCurvature::Hyperbolic { k } => k * (1.0 + 1e-3 + 20.0 * t),
            };
            let r = sphere_radius_from_curvature(c, kappa).unwrap();
            let back = curvature_from_sphere_radius(c, r).unwrap();
            if kappa == 0.0 {
                prop_assert!(back.abs() < 1e-12);
            } else {
                prop_assert!(((back - kappa) / kappa).abs() < 1e-12, "{kappa} -> {r} -> {back}");
            }
        }

        #[test]
        fn radius_decreasing(c in geometry(), t in 0.0f64..1.0, dt in 1e-3f64..1.0) {
            let base = match c {
                SpaceCurvature::Hyperbolic { k } => k * 1.01,
                _ => 0.05,
            };
            let k1 = base + t;
            let k2 = k1 + dt;
            prop_assert!(sphere_radius_from_curvature(c, k2).unwrap() < sphere_radius_from_curvature(c, k1).unwrap());
        }

        #[test]
        fn side_increasing_in_angle(c in geometry(), a in 0.05f64..0.9, b in 0.05f64..0.9, g in 0.01f64..3.1, dg in 1e-3f64..0.03) {
            let g2 = (g + dg).min(PI);
            let d1 = law_of_cosines_side(c, a, b, g).unwrap();
            let d2 = law_of_cosines_side(c, a, b, g2).unwrap();
            prop_assert!(d2 > d1);
        }

        #[test]
        fn angle_round_trip(c in geometry(), a in 0.05f64..0.9, b in 0.05f64..0.9, g in 0.0f64..PI) {
            let d = law_of_cosines_side(c, a, b, g).unwrap();
            let back = law_of_cosines_angle(c, a, b, d).unwrap();
            let again = law_of_cosines_side(c, a, b, back).unwrap();
            prop_assert!((again - d).abs() < 1e-10);
        }
    }
}
