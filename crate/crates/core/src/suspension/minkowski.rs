//! Hyperboloid model `{⟨x, x⟩ = −1, x₀ > 0}` in Minkowski space of
//! signature (−, +, +, +).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::acosh_stable;

pub type Vec4 = [f64; 4];

#[inline]
pub fn inner(a: &Vec4, b: &Vec4) -> f64 {
    -a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]
}

#[inline]
fn axpy(alpha: f64, x: &Vec4, y: &Vec4) -> Vec4 {
    [
        alpha * x[0] + y[0],
        alpha * x[1] + y[1],
        alpha * x[2] + y[2],
        alpha * x[3] + y[3],
    ]
}

#[inline]
fn scale(alpha: f64, x: &Vec4) -> Vec4 {
    [alpha * x[0], alpha * x[1], alpha * x[2], alpha * x[3]]
}

/// The vector `n` with `⟨n, w⟩ = det[w, x, y, z]` for every `w`.
pub fn lorentz_cross(x: &Vec4, y: &Vec4, z: &Vec4) -> Vec4 {
    let det3 = |i: usize, j: usize, k: usize| {
        x[i] * (y[j] * z[k] - y[k] * z[j]) - x[j] * (y[i] * z[k] - y[k] * z[i])
            + x[k] * (y[i] * z[j] - y[j] * z[i])
    };
    // Cofactor expansion of det[w, x, y, z] along w.
    let c = [det3(1, 2, 3), -det3(0, 2, 3), det3(0, 1, 3), -det3(0, 1, 2)];
    [-c[0], c[1], c[2], c[3]]
}

/// A point of hyperbolic 3-space on the upper sheet of the hyperboloid.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MinkowskiPoint(pub Vec4);

impl MinkowskiPoint {
    /// The point `(1, 0, 0, 0)`.
    pub const BASE: MinkowskiPoint = MinkowskiPoint([1.0, 0.0, 0.0, 0.0]);

    /// Point at distance `r` from the basepoint along the unit Euclidean
    /// direction `dir`.
    pub fn from_polar(r: f64, dir: [f64; 3]) -> Self {
        let s = r.sinh();
        MinkowskiPoint([r.cosh(), s * dir[0], s * dir[1], s * dir[2]])
    }

    /// Rescales a future-pointing timelike vector onto the hyperboloid.
    pub fn normalize(v: Vec4) -> Result<Self> {
        let nn = -inner(&v, &v);
        if !(nn > 0.0) || v[0] <= 0.0 {
            return Err(Error::Degenerate("hyperboloid normalization"));
        }
        Ok(MinkowskiPoint(scale(1.0 / nn.sqrt(), &v)))
    }

    pub fn coords(&self) -> &Vec4 {
        &self.0
    }

    /// `⟨x, x⟩ + 1`, zero on the hyperboloid.
    pub fn defect(&self) -> f64 {
        inner(&self.0, &self.0) + 1.0
    }

    pub fn distance(&self, other: &MinkowskiPoint) -> f64 {
        acosh_stable((-inner(&self.0, &other.0)).max(1.0))
    }

    /// Beltrami–Klein coordinates: geodesics become straight segments.
    pub fn klein(&self) -> [f64; 3] {
        let x = &self.0;
        [x[1] / x[0], x[2] / x[0], x[3] / x[0]]
    }

    /// Projection of `x` onto the tangent space at `self`.
    pub fn tangent(&self, x: &Vec4) -> Vec4 {
        axpy(inner(x, &self.0), &self.0, x)
    }

    /// Rotation by `angle` about the axis through the basepoint in the
    /// `x₃` direction.
    pub fn rotate_about_axis(&self, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        let x = &self.0;
        MinkowskiPoint([x[0], c * x[1] - s * x[2], s * x[1] + c * x[2], x[3]])
    }
}

/// Unit tangent at `at` of the half-plane bounded by the geodesic `at → along`
/// that contains `toward`, orthogonal to the edge.
fn in_face_direction(
    at: &MinkowskiPoint,
    along: &MinkowskiPoint,
    toward: &MinkowskiPoint,
) -> Result<Vec4> {
    let e = at.tangent(&along.0);
    let ee = inner(&e, &e);
    if !(ee > 0.0) {
        return Err(Error::Degenerate("edge"));
    }
    let r = at.tangent(&toward.0);
    let r = axpy(-inner(&r, &e) / ee, &e, &r);
    let rr = inner(&r, &r);
    if !(rr > 1e-28 * ee.max(1.0)) {
        return Err(Error::Degenerate("face"));
    }
    Ok(scale(1.0 / rr.sqrt(), &r))
}

/// Unsigned angle in `[0, π]` at the edge `pq` between the half-planes
/// containing `r` and `s`.
pub fn face_angle(
    p: &MinkowskiPoint,
    q: &MinkowskiPoint,
    r: &MinkowskiPoint,
    s: &MinkowskiPoint,
) -> Result<f64> {
    let dr = in_face_direction(p, q, r)?;
    let ds = in_face_direction(p, q, s)?;
    Ok(inner(&dr, &ds).clamp(-1.0, 1.0).acos())
}

/// Angle in `[0, 2π]` at the edge `pq` between half-planes toward `r` and
/// `s`, measured through the side of the plane `pqr` opposite to `outward`
/// (a normal of that plane).
pub fn interior_face_angle(
    p: &MinkowskiPoint,
    q: &MinkowskiPoint,
    r: &MinkowskiPoint,
    s: &MinkowskiPoint,
    outward: &Vec4,
) -> Result<f64> {
    let dr = in_face_direction(p, q, r)?;
    let ds = in_face_direction(p, q, s)?;
    let phi = inner(&dr, &ds).clamp(-1.0, 1.0).acos();
    if inner(&ds, outward) > 0.0 {
        Ok(2.0 * std::f64::consts::PI - phi)
    } else {
        Ok(phi)
    }
}

/// Foot of the perpendicular from `c` to the geodesic through `a` and `b`,
/// returned with its coefficients `(x, y)` in `foot ∝ x·a + y·b`; both are
/// positive exactly when the foot lies strictly inside the segment.
pub fn perpendicular_foot(
    c: &MinkowskiPoint,
    a: &MinkowskiPoint,
    b: &MinkowskiPoint,
) -> Result<(MinkowskiPoint, f64, f64)> {
    let (v, x, y) = project_onto_span(c, a, b)?;
    Ok((MinkowskiPoint::normalize(v)?, x, y))
}

/// Minkowski-orthogonal projection of `c` onto `span(a, b)`.
fn project_onto_span(
    c: &MinkowskiPoint,
    a: &MinkowskiPoint,
    b: &MinkowskiPoint,
) -> Result<(Vec4, f64, f64)> {
    let k = inner(&a.0, &b.0); // −cosh|ab|
    let (ca, cb) = (inner(&c.0, &a.0), inner(&c.0, &b.0));
    // Gram system [[−1, k], [k, −1]]·(x, y) = (ca, cb).
    let det = 1.0 - k * k;
    if det.abs() < 1e-300 {
        return Err(Error::Degenerate("geodesic"));
    }
    let x = (-ca - k * cb) / det;
    let y = (-cb - k * ca) / det;
    Ok((axpy(x, &a.0, &scale(y, &b.0)), x, y))
}

/// Hyperbolic distance from `x` to the full geodesic through `a` and `b`.
///
/// Uses `sinh d = |x − proj(x)|`, which stays accurate for points on or near
/// the geodesic.
pub fn distance_to_geodesic(
    x: &MinkowskiPoint,
    a: &MinkowskiPoint,
    b: &MinkowskiPoint,
) -> Result<f64> {
    let (v, _, _) = project_onto_span(x, a, b)?;
    let perp = axpy(-1.0, &v, &x.0);
    Ok(inner(&perp, &perp).max(0.0).sqrt().asinh())
}

/// Point dividing the segment `ab` so that `sinh|a·| / sinh|·b| = ratio`.
///
/// On the hyperboloid, `sinh(d − s)·a + sinh(s)·b` is `sinh d` times the
/// point at distance `s` from `a`, so the sinh-ratio point is `a + ratio·b`
/// rescaled.
pub fn sinh_ratio_point(
    a: &MinkowskiPoint,
    b: &MinkowskiPoint,
    ratio: f64,
) -> Result<MinkowskiPoint> {
    MinkowskiPoint::normalize(axpy(ratio, &b.0, &a.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn polar_points_lie_on_hyperboloid() {
        let x = MinkowskiPoint::from_polar(2.3, [0.6, 0.0, 0.8]);
        assert!(x.defect().abs() < 1e-12);
        assert_relative_eq!(MinkowskiPoint::BASE.distance(&x), 2.3, max_relative = 1e-14);
    }

    #[test]
    fn lorentz_cross_is_orthogonal() {
        let a = MinkowskiPoint::from_polar(0.4, [1.0, 0.0, 0.0]).0;
        let b = MinkowskiPoint::from_polar(0.9, [0.0, 1.0, 0.0]).0;
        let c = MinkowskiPoint::from_polar(1.3, [0.0, 0.6, 0.8]).0;
        let n = lorentz_cross(&a, &b, &c);
        for v in [a, b, c] {
            assert!(inner(&n, &v).abs() < 1e-12);
        }
    }

    #[test]
    fn flat_configuration_is_straight() {
        // Four points of the plane x₃ = 0; r and s on opposite sides of pq.
        let p = MinkowskiPoint::BASE;
        let q = MinkowskiPoint::from_polar(1.0, [1.0, 0.0, 0.0]);
        let r = MinkowskiPoint::from_polar(0.7, [0.0, 1.0, 0.0]);
        let s = MinkowskiPoint::from_polar(0.5, [0.6, -0.8, 0.0]);
        assert_relative_eq!(
            face_angle(&p, &q, &r, &s).unwrap(),
            PI,
            max_relative = 1e-14
        );
    }

    #[test]
    fn right_angle_between_coordinate_planes() {
        let p = MinkowskiPoint::BASE;
        let q = MinkowskiPoint::from_polar(1.0, [1.0, 0.0, 0.0]);
        let r = MinkowskiPoint::from_polar(0.7, [0.0, 1.0, 0.0]);
        let s = MinkowskiPoint::from_polar(0.5, [0.3, 0.0, 0.9539392014169456]);
        assert_relative_eq!(
            face_angle(&p, &q, &r, &s).unwrap(),
            PI / 2.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn foot_and_sinh_ratio() {
        let a = MinkowskiPoint::from_polar(1.0, [1.0, 0.0, 0.0]);
        let b = MinkowskiPoint::from_polar(1.5, [0.0, 1.0, 0.0]);
        let (foot, x, y) = perpendicular_foot(&MinkowskiPoint::BASE, &a, &b).unwrap();
        assert!(x > 0.0 && y > 0.0);
        // The foot is closest: nearby points on the geodesic are farther.
        let d0 = MinkowskiPoint::BASE.distance(&foot);
        for r in [0.9, 1.1] {
            let ratio = foot.distance(&a).sinh() / foot.distance(&b).sinh() * r;
            let near = sinh_ratio_point(&a, &b, ratio).unwrap();
            assert!(MinkowskiPoint::BASE.distance(&near) > d0);
        }
        let p = sinh_ratio_point(&a, &b, 0.37).unwrap();
        assert_relative_eq!(
            p.distance(&a).sinh() / p.distance(&b).sinh(),
            0.37,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            p.distance(&a) + p.distance(&b),
            a.distance(&b),
            max_relative = 1e-13
        );
        assert!(distance_to_geodesic(&p, &a, &b).unwrap() < 1e-14);
        assert_relative_eq!(
            distance_to_geodesic(&MinkowskiPoint::BASE, &a, &b).unwrap(),
            d0,
            max_relative = 1e-12
        );
    }
}
