//! Two-ray integration contours for the oscillatory Airy-type integrals.
//!
//! All the integrals in this crate of the form ∫ e^{iua + ia³/3} φ(a) da run
//! from ∞e^{5iπ/6} to ∞e^{iπ/6}. The cubic term makes the integrand decay
//! super-exponentially inside the sectors arg a ∈ (0, π/3) and (2π/3, π), so
//! a pair of straight rays meeting at a vertex below the real axis is enough;
//! pole-side constraints (poles strictly above the contour) fix the vertex.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad::GaussLegendre;

/// Default truncation radius of each ray.
pub const DEFAULT_RADIUS: f64 = 12.0;
/// Default number of Gauss-Legendre nodes per ray.
pub const DEFAULT_NODES: usize = 200;

/// A V-shaped contour: two rays from `vertex`, traversed from the far end of
/// the left ray to the far end of the right ray.
#[derive(Debug, Clone)]
pub struct ContourSpec {
    /// Point where the two rays meet.
    pub vertex: Complex64,
    /// Direction (radians) of the ray toward ∞e^{iπ/6}.
    pub angle_right: f64,
    /// Direction (radians) of the ray toward ∞e^{5iπ/6}.
    pub angle_left: f64,
    /// Length at which each ray is truncated.
    pub truncation_radius: f64,
    /// Gauss-Legendre nodes per ray.
    pub nodes_per_ray: usize,
}

impl ContourSpec {
    /// Standard contour for integrands with poles at i w_j: straight rays at
    /// angles π/6 and 5π/6 from a vertex at -i(1 + max(0, -min_j w_j)), so
    /// every pole sits strictly above the contour.
    pub fn standard(min_w: f64) -> Self {
        ContourSpec {
            vertex: Complex64::new(0.0, -(1.0 + (-min_w).max(0.0))),
            angle_right: std::f64::consts::FRAC_PI_6,
            angle_left: 5.0 * std::f64::consts::FRAC_PI_6,
            truncation_radius: DEFAULT_RADIUS,
            nodes_per_ray: DEFAULT_NODES,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let third = std::f64::consts::FRAC_PI_3;
        if !(self.angle_right > 0.0 && self.angle_right < third) {
            return Err(Error::BadContour(format!(
                "right angle {} outside decay sector (0, pi/3)",
                self.angle_right
            )));
        }
        if !(self.angle_left > 2.0 * third && self.angle_left < std::f64::consts::PI) {
            return Err(Error::BadContour(format!(
                "left angle {} outside decay sector (2pi/3, pi)",
                self.angle_left
            )));
        }
        if !(self.truncation_radius > 0.0) || self.nodes_per_ray < 8 {
            return Err(Error::BadContour(
                "radius must be positive and nodes_per_ray >= 8".into(),
            ));
        }
        Ok(())
    }

    /// Height of the contour at real coordinate `x` (the rays open upward).
    pub fn height_at(&self, x: f64) -> f64 {
        let dx = x - self.vertex.re;
        if dx >= 0.0 {
            self.vertex.im + dx * self.angle_right.tan()
        } else {
            self.vertex.im + dx * self.angle_left.tan()
        }
    }

    /// Checks that every pole lies strictly above the contour and at least
    /// `tol` away from both rays.
    pub fn validate_poles(&self, poles: &[Complex64], tol: f64) -> Result<()> {
        for &p in poles {
            if p.im <= self.height_at(p.re) {
                return Err(Error::BadContour(format!(
                    "pole {:.4}{:+.4}i not strictly above the contour",
                    p.re, p.im
                )));
            }
            let dist = self.distance_to(p);
            if dist < tol {
                return Err(Error::PoleNearContour { dist, tol });
            }
        }
        Ok(())
    }

    /// Euclidean distance from a point to the (truncated) contour.
    pub fn distance_to(&self, p: Complex64) -> f64 {
        let d_right = distance_to_ray(p, self.vertex, self.angle_right, self.truncation_radius);
        let d_left = distance_to_ray(p, self.vertex, self.angle_left, self.truncation_radius);
        d_right.min(d_left)
    }

    /// ∫ f(a) da along the contour, oriented from the left ray's far end to
    /// the right ray's far end.
    pub fn integrate<F: Fn(Complex64) -> Complex64>(&self, f: F) -> Complex64 {
        let rule = GaussLegendre::new(self.nodes_per_ray);
        let dir_r = Complex64::from_polar(1.0, self.angle_right);
        let dir_l = Complex64::from_polar(1.0, self.angle_left);
        let mut total = Complex64::new(0.0, 0.0);
        for (t, w) in rule.mapped(0.0, self.truncation_radius) {
            total += w * f(self.vertex + t * dir_r) * dir_r;
            total -= w * f(self.vertex + t * dir_l) * dir_l;
        }
        total
    }

    /// Decay gate: the integrand at the truncation radius must be negligible
    /// against its size on the inner part of the contour. The reference is a
    /// max over several sample points, not the vertex alone, because the
    /// integrand may have an incidental zero there.
    pub fn check_decay<F: Fn(Complex64) -> Complex64>(&self, f: F) -> Result<()> {
        let dir_r = Complex64::from_polar(1.0, self.angle_right);
        let dir_l = Complex64::from_polar(1.0, self.angle_left);
        let r = self.truncation_radius;
        let mut reference = f(self.vertex).norm();
        for frac in [0.125, 0.25, 0.5] {
            reference = reference.max(f(self.vertex + frac * r * dir_r).norm());
            reference = reference.max(f(self.vertex + frac * r * dir_l).norm());
        }
        let end_r = f(self.vertex + r * dir_r).norm();
        let end_l = f(self.vertex + r * dir_l).norm();
        let bound = 1e-14 * reference.max(f64::MIN_POSITIVE);
        if end_r > bound || end_l > bound {
            return Err(Error::BadContour(format!(
                "integrand does not decay along the rays (|end| = {:.3e}, reference = {:.3e})",
                end_r.max(end_l),
                reference
            )));
        }
        Ok(())
    }
}

fn distance_to_ray(p: Complex64, origin: Complex64, angle: f64, length: f64) -> f64 {
    let d = Complex64::from_polar(1.0, angle);
    let v = p - origin;
    // projection of v onto the ray direction, clamped to the segment
    let t = (v.re * d.re + v.im * d.im).clamp(0.0, length);
    (v - t * d).norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn standard_contour_is_valid() {
        let c = ContourSpec::standard(0.0);
        c.validate().unwrap();
        assert_abs_diff_eq!(c.vertex.im, -1.0);
        // pole at the origin (w = 0) sits above the vertex
        c.validate_poles(&[Complex64::new(0.0, 0.0)], 1e-6).unwrap();
    }

    #[test]
    fn vertex_drops_below_negative_w() {
        let c = ContourSpec::standard(-0.7);
        assert_abs_diff_eq!(c.vertex.im, -1.7);
        c.validate_poles(&[Complex64::new(0.0, -0.7)], 1e-6).unwrap();
    }

    #[test]
    fn pole_below_contour_is_rejected() {
        let c = ContourSpec::standard(0.0);
        let err = c.validate_poles(&[Complex64::new(0.0, -2.0)], 1e-6);
        assert!(err.is_err());
    }

    #[test]
    fn pole_too_close_is_rejected() {
        let c = ContourSpec::standard(0.0);
        let err = c.validate_poles(&[c.vertex + Complex64::new(0.0, 1e-9)], 1e-6);
        assert!(matches!(err, Err(Error::PoleNearContour { .. })));
    }

    #[test]
    fn integrand_decay_gate() {
        let c = ContourSpec::standard(0.0);
        let airy_integrand =
            |a: Complex64| (Complex64::i() * (a + a * a * a / 3.0)).exp();
        c.check_decay(airy_integrand).unwrap();
        // a non-decaying integrand must be rejected
        assert!(c.check_decay(|_| Complex64::new(1.0, 0.0)).is_err());
    }
}
