//! Vector models of the constant-curvature plane `M^2(c)`.
//!
//! * flat: homogeneous coordinates `(x, y, 1)`;
//! * spherical: the sphere `|p| = 1/k` in `R^3`;
//! * hyperbolic: the upper sheet of `x^2 + y^2 - z^2 = -1/k^2` in Minkowski
//!   space.
//!
//! In every model the origin is `(0, 0, 1)` (scaled by `1/k` when curved) and
//! orientation-preserving isometries act as 3x3 matrices. Tangent vectors at
//! a point are ambient vectors; in the flat model they have `z = 0`.

use nalgebra::{Matrix3, Vector3};

use crate::geometry::SpaceCurvature;

pub type Point = Vector3<f64>;
pub type Tangent = Vector3<f64>;
pub type Isometry = Matrix3<f64>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Model {
    curvature: SpaceCurvature,
}

impl Model {
    pub fn new(curvature: SpaceCurvature) -> Self {
        Model { curvature }
    }

    pub fn curvature(&self) -> SpaceCurvature {
        self.curvature
    }

    /// Ambient bilinear form whose restriction to tangent spaces is the
    /// Riemannian metric.
    pub fn inner(&self, u: &Vector3<f64>, v: &Vector3<f64>) -> f64 {
        match self.curvature {
            SpaceCurvature::Hyperbolic { .. } => u.x * v.x + u.y * v.y - u.z * v.z,
            _ => u.dot(v),
        }
    }

    pub fn origin(&self) -> Point {
        self.polar(0.0, 0.0)
    }

    /// Point at geodesic distance `rho` from the origin in direction `phi`.
    pub fn polar(&self, rho: f64, phi: f64) -> Point {
        let (s, c) = phi.sin_cos();
        match self.curvature {
            SpaceCurvature::Flat => Vector3::new(rho * c, rho * s, 1.0),
            SpaceCurvature::Spherical { k } => {
                let (sr, cr) = (k * rho).sin_cos();
                Vector3::new(sr * c / k, sr * s / k, cr / k)
            }
            SpaceCurvature::Hyperbolic { k } => {
                let (sr, cr) = ((k * rho).sinh(), (k * rho).cosh());
                Vector3::new(sr * c / k, sr * s / k, cr / k)
            }
        }
    }

    /// Geodesic polar coordinates `(rho, phi)` of `p` about the origin.
    pub fn to_polar(&self, p: &Point) -> (f64, f64) {
        let planar = p.x.hypot(p.y);
        let phi = p.y.atan2(p.x);
        let rho = match self.curvature {
            SpaceCurvature::Flat => planar,
            SpaceCurvature::Spherical { k } => planar.atan2(p.z) / k,
            SpaceCurvature::Hyperbolic { k } => (k * planar).asinh() / k,
        };
        (rho, phi)
    }

    /// Unit radial tangent at `polar(rho, phi)`, pointing away from the
    /// origin.
    pub fn polar_radial(&self, rho: f64, phi: f64) -> Tangent {
        let (s, c) = phi.sin_cos();
        match self.curvature {
            SpaceCurvature::Flat => Vector3::new(c, s, 0.0),
            SpaceCurvature::Spherical { k } => {
                let (sr, cr) = (k * rho).sin_cos();
                Vector3::new(cr * c, cr * s, -sr)
            }
            SpaceCurvature::Hyperbolic { k } => {
                let (sr, cr) = ((k * rho).sinh(), (k * rho).cosh());
                Vector3::new(cr * c, cr * s, sr)
            }
        }
    }

    /// Unit tangent at `polar(rho, phi)` in the direction of increasing `phi`.
    pub fn polar_angular(&self, _rho: f64, phi: f64) -> Tangent {
        let (s, c) = phi.sin_cos();
        Vector3::new(-s, c, 0.0)
    }

    /// Rotation by `angle` about the origin.
    pub fn rotation(&self, angle: f64) -> Isometry {
        let (s, c) = angle.sin_cos();
        Matrix3::new(c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0)
    }

    /// Transvection along the x-axis by distance `t`: moves the origin to
    /// `polar(t, 0)` and parallel-transports tangent frames along the axis.
    pub fn axis_translation(&self, t: f64) -> Isometry {
        match self.curvature {
            SpaceCurvature::Flat => Matrix3::new(1.0, 0.0, t, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0),
            SpaceCurvature::Spherical { k } => {
                let (s, c) = (k * t).sin_cos();
                Matrix3::new(c, 0.0, s, 0.0, 1.0, 0.0, -s, 0.0, c)
            }
            SpaceCurvature::Hyperbolic { k } => {
                let (s, c) = ((k * t).sinh(), (k * t).cosh());
                Matrix3::new(c, 0.0, s, 0.0, 1.0, 0.0, s, 0.0, c)
            }
        }
    }

    /// Transvection moving the origin to `polar(rho, phi)` along the joining
    /// geodesic.
    pub fn translation(&self, rho: f64, phi: f64) -> Isometry {
        self.rotation(phi) * self.axis_translation(rho) * self.rotation(-phi)
    }

    /// Inverse of [`Model::translation`].
    pub fn translation_inverse(&self, rho: f64, phi: f64) -> Isometry {
        self.translation(-rho, phi)
    }

    /// Geodesic distance, evaluated from the chord length.
    pub fn distance(&self, p: &Point, q: &Point) -> f64 {
        let d = p - q;
        match self.curvature {
            SpaceCurvature::Flat => d.x.hypot(d.y),
            SpaceCurvature::Spherical { k } => {
                2.0 * (0.5 * k * d.norm()).clamp(0.0, 1.0).asin() / k
            }
            SpaceCurvature::Hyperbolic { k } => {
                let chord2 = (d.x * d.x + d.y * d.y - d.z * d.z).max(0.0);
                2.0 * (0.5 * k * chord2.sqrt()).asinh() / k
            }
        }
    }

    /// Unit tangent at `p` of the geodesic towards `q`.
    pub fn direction(&self, p: &Point, q: &Point) -> Tangent {
        let v = match self.curvature {
            SpaceCurvature::Flat => {
                let d = q - p;
                Vector3::new(d.x, d.y, 0.0)
            }
            SpaceCurvature::Spherical { k } => q - p * (k * k * p.dot(q)),
            SpaceCurvature::Hyperbolic { k } => q + p * (k * k * self.inner(p, q)),
        };
        let n = self.inner(&v, &v).max(0.0).sqrt();
        v / n
    }

    /// Exponential map: walk distance `t` from `p` along unit tangent `v`.
    pub fn exp(&self, p: &Point, v: &Tangent, t: f64) -> Point {
        match self.curvature {
            SpaceCurvature::Flat => p + v * t,
            SpaceCurvature::Spherical { k } => {
                let (s, c) = (k * t).sin_cos();
                p * c + v * (s / k)
            }
            SpaceCurvature::Hyperbolic { k } => p * (k * t).cosh() + v * ((k * t).sinh() / k),
        }
    }

    /// Signed side of `q` relative to the geodesic through `p` with unit
    /// normal `n`: negative on the side `-n` points to. Proportional to the
    /// sine of the distance from `q` to that geodesic.
    pub fn side(&self, p: &Point, n: &Tangent, q: &Point) -> f64 {
        match self.curvature {
            SpaceCurvature::Flat => (q.x - p.x) * n.x + (q.y - p.y) * n.y,
            SpaceCurvature::Spherical { k } => k * q.dot(n),
            SpaceCurvature::Hyperbolic { k } => k * self.inner(q, n),
        }
    }
}
