//! Division-free interpolation between homogeneous points.
//!
//! `lerp_rational` keeps the linear parameterization of the Euclidean
//! segment by cross-weighting the endpoints:
//!
//! ```text
//! x(t) = [ w2 x1 + (w1 x2 - w2 x1) t : w2 w1 ]
//! ```
//!
//! `lerp_monotonic` interpolates every component, `w` included. It traces
//! the same segment with a nonlinear but monotonic parameterization.
//!
//! The kernels are generic over any ring-like scalar and do not require
//! division, so the compiler rejects a stray `/` in them.

use std::cmp::Ordering;
use std::ops::{Add, Mul, Sub};

use crate::error::{KernelError, Result};
use crate::hcoords::{exponent_of, normalize_exponents, HomogeneousPoint};

/// A segment between two affine homogeneous points of the same kind.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HSegment<P> {
    p1: P,
    p2: P,
}

impl<P> HSegment<P> {
    /// Rejects endpoints at infinity.
    pub fn new<const N: usize>(p1: P, p2: P) -> Result<Self>
    where
        P: HomogeneousPoint<N>,
    {
        if p1.coords()[N - 1] == 0.0 || p2.coords()[N - 1] == 0.0 {
            return Err(KernelError::IdealEndpoint);
        }
        Ok(HSegment { p1, p2 })
    }

    pub fn p1(&self) -> &P {
        &self.p1
    }

    pub fn p2(&self) -> &P {
        &self.p2
    }
}

/// Raw cross-weighted interpolation. Per spatial coordinate: two weight
/// products, one product with `t`; plus the shared `w2 w1`.
pub fn lerp_rational_terms<T, const N: usize>(p1: [T; N], p2: [T; N], t: T) -> [T; N]
where
    T: Copy + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    let (w1, w2) = (p1[N - 1], p2[N - 1]);
    let mut out = p1;
    for i in 0..N - 1 {
        let a = w2 * p1[i];
        let b = w1 * p2[i];
        out[i] = a + (b - a) * t;
    }
    out[N - 1] = w2 * w1;
    out
}

/// Raw componentwise interpolation `x1 + (x2 - x1) t`.
pub fn lerp_monotonic_terms<T, const N: usize>(p1: [T; N], p2: [T; N], t: T) -> [T; N]
where
    T: Copy + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    let mut out = p1;
    for i in 0..N {
        out[i] = p1[i] + (p2[i] - p1[i]) * t;
    }
    out
}

fn finite<const N: usize>(c: &[f64; N]) -> bool {
    c.iter().all(|v| v.is_finite())
}

const W_LO: i32 = -500;
const W_HI: i32 = 500;

/// Point at parameter `t` on the line through the endpoints, linear in the
/// Euclidean sense: its projection is `X1 + (X2 - X1) t`.
///
/// When `|w2 w1|` leaves `[2^-500, 2^500]` the endpoints are first rescaled
/// by powers of two and the result is returned exponent-normalized, which
/// keeps it representable without changing its projective class.
pub fn lerp_rational<const N: usize, P>(seg: &HSegment<P>, t: f64) -> Result<P>
where
    P: HomogeneousPoint<N>,
{
    if !t.is_finite() {
        return Err(KernelError::NonFinite);
    }
    let (c1, c2) = (seg.p1.coords(), seg.p2.coords());
    let out = lerp_rational_terms(c1, c2, t);
    let ww = out[N - 1];
    let in_range = ww != 0.0 && (W_LO..W_HI).contains(&exponent_of(ww));
    if in_range && finite(&out) {
        return P::from_coords(out);
    }

    let n1 = normalize_exponents(c1)?.tuple;
    let n2 = normalize_exponents(c2)?.tuple;
    let out = lerp_rational_terms(n1, n2, t);
    if !finite(&out) {
        return Err(KernelError::NonFinite);
    }
    P::from_coords(normalize_exponents(out)?.tuple)
}

/// Componentwise interpolation for `t ∈ [0, 1]`. Both endpoints are
/// reproduced exactly.
///
/// Weights of opposite sign are rejected: the path would pass through
/// infinity.
pub fn lerp_monotonic<const N: usize, P>(seg: &HSegment<P>, t: f64) -> Result<P>
where
    P: HomogeneousPoint<N>,
{
    check_monotonic(seg, t)?;
    let (c1, c2) = (seg.p1.coords(), seg.p2.coords());
    // Evaluating from the nearer endpoint makes t = 1 as exact as t = 0;
    // 1 - t is exact on [0.5, 1].
    let out = if t <= 0.5 {
        lerp_monotonic_terms(c1, c2, t)
    } else {
        lerp_monotonic_terms(c2, c1, 1.0 - t)
    };
    if !finite(&out) {
        return Err(KernelError::NonFinite);
    }
    P::from_coords(out)
}

fn check_monotonic<const N: usize, P>(seg: &HSegment<P>, t: f64) -> Result<()>
where
    P: HomogeneousPoint<N>,
{
    if !(0.0..=1.0).contains(&t) {
        return Err(KernelError::ParameterOutOfRange);
    }
    let (w1, w2) = (seg.p1.coords()[N - 1], seg.p2.coords()[N - 1]);
    if w1.is_sign_negative() != w2.is_sign_negative() {
        return Err(KernelError::SignConflict);
    }
    Ok(())
}

/// Euclidean fraction `u` of the segment reached by `lerp_monotonic` at `t`:
/// `u = t w2 / ((1 - t) w1 + t w2)`.
pub fn monotonic_to_linear_param<const N: usize, P>(seg: &HSegment<P>, t: f64) -> Result<f64>
where
    P: HomogeneousPoint<N>,
{
    check_monotonic(seg, t)?;
    let (w1, w2) = (seg.p1.coords()[N - 1], seg.p2.coords()[N - 1]);
    Ok(t * w2 / ((1.0 - t) * w1 + t * w2))
}

/// Orders two monotonic parameters by the Euclidean distance of their points
/// from the first endpoint. Since the parameterization is monotonic this is
/// the order of the parameters themselves; no division is needed.
pub fn compare_distance_from_start<const N: usize, P>(
    seg: &HSegment<P>,
    ta: f64,
    tb: f64,
) -> Result<Ordering>
where
    P: HomogeneousPoint<N>,
{
    check_monotonic(seg, ta)?;
    check_monotonic(seg, tb)?;
    Ok(ta.total_cmp(&tb))
}
