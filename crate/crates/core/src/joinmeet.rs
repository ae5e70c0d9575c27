//! Join and meet constructions.
//!
//! Under duality a meet of two lines and a join of two points are the same
//! computation, and so are the plane through three points and the point
//! common to three planes. Each pair is served by one shared kernel.
//! Results stay homogeneous: nothing here divides.

use crate::error::{KernelError, Result};
use crate::hcoords::{HLine2, HPlane, HPoint2, HPoint3};
use crate::xprod::{cross3, cross4, plucker_from_points, PluckerLine, Vec3};

fn checked<const N: usize>(r: [f64; N], degenerate: KernelError) -> Result<[f64; N]> {
    if r.iter().any(|v| !v.is_finite()) {
        return Err(KernelError::NonFinite);
    }
    if r.iter().all(|&v| v == 0.0) {
        return Err(degenerate);
    }
    Ok(r)
}

/// The shared P² kernel: `u × v` is the meet of two lines or the join of two
/// points.
#[inline]
pub fn dual_cross3(u: &[f64; 3], v: &[f64; 3]) -> Result<[f64; 3]> {
    checked(cross3(u, v), KernelError::DegenerateInput)
}

/// The shared P³ kernel: `u × v × t` is the plane through three points or
/// the point common to three planes.
#[inline]
pub fn dual_cross4(u: &[f64; 4], v: &[f64; 4], t: &[f64; 4]) -> Result<[f64; 4]> {
    checked(cross4(u, v, t), KernelError::DegenerateInput)
}

/// Intersection of two lines. Parallel lines meet in an ideal point
/// (`w = 0`).
pub fn meet_lines(p1: HLine2, p2: HLine2) -> Result<HPoint2> {
    HPoint2::from_array(dual_cross3(p1.as_array(), p2.as_array())?)
}

/// The line through two points.
pub fn join_points(x1: HPoint2, x2: HPoint2) -> Result<HLine2> {
    HLine2::from_array(dual_cross3(x1.as_array(), x2.as_array())?)
}

/// The plane through three points.
pub fn plane_from_points(x1: HPoint3, x2: HPoint3, x3: HPoint3) -> Result<HPlane> {
    HPlane::from_array(dual_cross4(x1.as_array(), x2.as_array(), x3.as_array())?)
}

/// The point common to three planes; ideal when the planes share only a
/// direction.
pub fn meet_three_planes(r1: HPlane, r2: HPlane, r3: HPlane) -> Result<HPoint3> {
    HPoint3::from_array(dual_cross4(r1.as_array(), r2.as_array(), r3.as_array())?)
}

/// The line through two points in Plücker form.
pub fn line_from_points_3d(x1: HPoint3, x2: HPoint3) -> Result<PluckerLine> {
    plucker_from_points(x1, x2)
}

/// A line `X(t) = X0 + s t` with `X0` kept homogeneous.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParametricLine3 {
    pub origin_point: HPoint3,
    pub direction: Vec3,
}

impl ParametricLine3 {
    /// Homogeneous point at parameter `t`: `[x0 + s t w0 ; w0]`.
    pub fn point_at(&self, t: f64) -> Result<HPoint3> {
        let [x, y, z, w] = self.origin_point.to_array();
        let s = self.direction;
        HPoint3::new(x + s[0] * t * w, y + s[1] * t * w, z + s[2] * t * w, w)
    }
}

/// Intersection line of two planes.
///
/// The direction is `s = n1 × n2`. The point is the meet of both planes with
/// the auxiliary plane `[s; 0]` through the coordinate origin, which makes it
/// the line point closest to the origin.
pub fn meet_two_planes(r1: HPlane, r2: HPlane) -> Result<ParametricLine3> {
    let s = checked(cross3(&r1.normal(), &r2.normal()), KernelError::ParallelPlanes)?;
    let aux = [s[0], s[1], s[2], 0.0];
    let x0 = dual_cross4(r1.as_array(), r2.as_array(), &aux)?;
    Ok(ParametricLine3 {
        origin_point: HPoint3::from_array(x0)?,
        direction: s,
    })
}
