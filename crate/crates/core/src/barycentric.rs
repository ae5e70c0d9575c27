//! Projective barycentric coordinates.
//!
//! The vertices and the query point are written as the columns of a matrix
//! whose rows are the x-, y- (z-) and w-coordinates. The extended cross
//! product of those rows is orthogonal to each of them, which makes it the
//! null vector `ξ` with `Σ ξ_i x_i + ξ_w x_0 = 0` over homogeneous columns.
//!
//! The Euclidean readout is `λ_i = -(ξ_i w_i) / (ξ_w w_0)`. With unit weights
//! this is the familiar `λ_i = -ξ_i / ξ_w`; carrying the weights keeps `λ`
//! unchanged when a vertex is rescaled homogeneously.

use crate::error::{KernelError, Result};
use crate::hcoords::{HPoint2, HPoint3};
use crate::xprod::{cross4, cross5};

/// Barycentric tuple of a triangle query.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjBary3 {
    /// `[ξ1, ξ2, ξ3, ξw]`
    pub xi: [f64; 4],
    /// Homogeneous weights `[w1, w2, w3, w0]` of the vertices and the query.
    pub weights: [f64; 4],
}

/// Barycentric tuple of a tetrahedron query.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjBary4 {
    /// `[ξ1, ξ2, ξ3, ξ4, ξw]`
    pub xi: [f64; 5],
    /// `[w1, w2, w3, w4, w0]`
    pub weights: [f64; 5],
}

impl ProjBary3 {
    /// A tuple whose vertices and query all have unit weight.
    pub fn from_xi(xi: [f64; 4]) -> Self {
        ProjBary3 { xi, weights: [1.0; 4] }
    }
}

impl ProjBary4 {
    pub fn from_xi(xi: [f64; 5]) -> Self {
        ProjBary4 { xi, weights: [1.0; 5] }
    }
}

/// Common readout for triangle and tetrahedron tuples.
pub trait ProjBary {
    type Lambda;

    fn xi(&self) -> &[f64];
    fn weights(&self) -> &[f64];
    fn to_lambda(&self) -> Result<Self::Lambda>;

    /// Whether every `λ_i ≥ 0`, decided from signs alone. Points on an edge or
    /// face count as inside.
    fn is_inside(&self) -> Result<bool> {
        let (xi, w) = (self.xi(), self.weights());
        let n = xi.len() - 1;
        let den = sign(xi[n]) * sign(w[n]);
        if den == 0.0 {
            return Err(KernelError::DegenerateQuery);
        }
        Ok((0..n).all(|i| sign(xi[i]) * sign(w[i]) * den <= 0.0))
    }

    /// Whether every `λ_i ≥ -slack`.
    fn is_inside_with_slack(&self, slack: f64) -> Result<bool>
    where
        Self::Lambda: AsRef<[f64]>,
    {
        Ok(self.to_lambda()?.as_ref().iter().all(|&l| l >= -slack))
    }
}

fn sign(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x.signum()
    }
}

fn lambdas<const M: usize>(xi: &[f64], w: &[f64]) -> Result<[f64; M]> {
    let den = xi[M] * w[M];
    if den == 0.0 {
        return Err(KernelError::DegenerateQuery);
    }
    let mut out = [0.0; M];
    for (i, o) in out.iter_mut().enumerate() {
        *o = -(xi[i] * w[i]) / den;
    }
    if out.iter().any(|v| !v.is_finite()) {
        return Err(KernelError::NonFinite);
    }
    Ok(out)
}

impl ProjBary for ProjBary3 {
    type Lambda = [f64; 3];

    fn xi(&self) -> &[f64] {
        &self.xi
    }
    fn weights(&self) -> &[f64] {
        &self.weights
    }
    fn to_lambda(&self) -> Result<[f64; 3]> {
        lambdas(&self.xi, &self.weights)
    }
}

impl ProjBary for ProjBary4 {
    type Lambda = [f64; 4];

    fn xi(&self) -> &[f64] {
        &self.xi
    }
    fn weights(&self) -> &[f64] {
        &self.weights
    }
    fn to_lambda(&self) -> Result<[f64; 4]> {
        lambdas(&self.xi, &self.weights)
    }
}

/// Euclidean barycentric coordinates. Fails with `DegenerateQuery` when
/// `ξ_w = 0` or the query lies at infinity.
pub fn bary_to_euclidean<B: ProjBary>(xi: &B) -> Result<B::Lambda> {
    xi.to_lambda()
}

fn check_xi(xi: &[f64], degenerate: KernelError) -> Result<()> {
    if xi.iter().any(|v| !v.is_finite()) {
        return Err(KernelError::NonFinite);
    }
    // ξ_w is the vertex determinant, so it vanishes exactly when the
    // simplex is flat.
    if xi.iter().all(|&v| v == 0.0) || xi[xi.len() - 1] == 0.0 {
        return Err(degenerate);
    }
    Ok(())
}

/// Barycentric tuple of `x0` with respect to the triangle `x1 x2 x3`.
pub fn bary_triangle(x1: HPoint2, x2: HPoint2, x3: HPoint2, x0: HPoint2) -> Result<ProjBary3> {
    let cols = [x1.as_array(), x2.as_array(), x3.as_array(), x0.as_array()];
    let row = |k: usize| cols.map(|c| c[k]);
    let xi = cross4(&row(0), &row(1), &row(2));
    check_xi(&xi, KernelError::DegenerateTriangle)?;
    Ok(ProjBary3 { xi, weights: row(2) })
}

/// Barycentric tuple of `x0` with respect to the tetrahedron `x1 x2 x3 x4`.
pub fn bary_tetrahedron(
    x1: HPoint3,
    x2: HPoint3,
    x3: HPoint3,
    x4: HPoint3,
    x0: HPoint3,
) -> Result<ProjBary4> {
    let cols = [x1.as_array(), x2.as_array(), x3.as_array(), x4.as_array(), x0.as_array()];
    let row = |k: usize| cols.map(|c| c[k]);
    let xi = cross5(&row(0), &row(1), &row(2), &row(3));
    check_xi(&xi, KernelError::DegenerateTetrahedron)?;
    Ok(ProjBary4 { xi, weights: row(3) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> HPoint2 {
        HPoint2::new(x, y, 1.0).unwrap()
    }
    fn q(x: f64, y: f64, z: f64) -> HPoint3 {
        HPoint3::new(x, y, z, 1.0).unwrap()
    }

    #[test]
    fn triangle_centroid() {
        let b = bary_triangle(p(0., 0.), p(1., 0.), p(0., 1.), p(1. / 3., 1. / 3.)).unwrap();
        // 1/3 is inexact, so compare within a couple of ulps.
        for (got, want) in b.xi.iter().zip([1. / 3., 1. / 3., 1. / 3., -1.]) {
            assert!((got - want).abs() <= 1e-16);
        }
        let l = bary_to_euclidean(&b).unwrap();
        assert!(l.iter().all(|v| (v - 1. / 3.).abs() <= 1e-16));
        assert!(b.is_inside().unwrap());
    }

    #[test]
    fn triangle_vertex_and_outside() {
        let v = [p(0., 0.), p(1., 0.), p(0., 1.)];
        let b = bary_triangle(v[0], v[1], v[2], v[0]).unwrap();
        assert_eq!(b.to_lambda().unwrap(), [1., 0., 0.]);
        assert!(b.is_inside().unwrap());

        let b = bary_triangle(v[0], v[1], v[2], p(1., 1.)).unwrap();
        let l = b.to_lambda().unwrap();
        assert_eq!(l, [-1., 1., 1.]);
        assert_eq!(l.iter().sum::<f64>(), 1.0);
        assert!(!b.is_inside().unwrap());
        assert!(!b.is_inside_with_slack(0.5).unwrap());
        assert!(b.is_inside_with_slack(1.0).unwrap());
    }

    #[test]
    fn collinear_triangle() {
        assert_eq!(
            bary_triangle(p(0., 0.), p(1., 1.), p(2., 2.), p(0., 1.)),
            Err(KernelError::DegenerateTriangle)
        );
    }

    #[test]
    fn tetrahedron_examples() {
        let v = [q(0., 0., 0.), q(1., 0., 0.), q(0., 1., 0.), q(0., 0., 1.)];
        let b = bary_tetrahedron(v[0], v[1], v[2], v[3], q(0.25, 0.25, 0.25)).unwrap();
        assert_eq!(b.to_lambda().unwrap(), [0.25; 4]);
        let b = bary_tetrahedron(v[0], v[1], v[2], v[3], v[1]).unwrap();
        assert_eq!(b.to_lambda().unwrap(), [0., 1., 0., 0.]);
        assert_eq!(
            bary_tetrahedron(v[0], v[1], v[2], q(1., 1., 0.), v[3]),
            Err(KernelError::DegenerateTetrahedron)
        );
    }

    #[test]
    fn readout_examples() {
        let l = bary_to_euclidean(&ProjBary3::from_xi([1. / 3., 1. / 3., 1. / 3., -1.])).unwrap();
        assert_eq!(l, [1. / 3.; 3]);
        let l = bary_to_euclidean(&ProjBary3::from_xi([0., -1., 0., 1.])).unwrap();
        assert_eq!(l, [0., 1., 0.]);
        assert_eq!(
            bary_to_euclidean(&ProjBary3::from_xi([1., 1., 1., 0.])),
            Err(KernelError::DegenerateQuery)
        );
        assert_eq!(
            ProjBary3::from_xi([1., 1., 1., 0.]).is_inside(),
            Err(KernelError::DegenerateQuery)
        );
    }

    #[test]
    fn rescaled_vertices_keep_lambda() {
        let v = [p(0.5, -1.), p(3., 0.25), p(-2., 2.)];
        let x0 = p(0.125, 0.375);
        let base = bary_triangle(v[0], v[1], v[2], x0).unwrap().to_lambda().unwrap();
        let s = |pt: HPoint2, k: f64| HPoint2::from_array(pt.to_array().map(|c| c * k)).unwrap();
        let b = bary_triangle(s(v[0], 4.), s(v[1], -0.5), s(v[2], 2.), s(x0, 8.)).unwrap();
        assert_eq!(b.to_lambda().unwrap(), base);
    }

    #[test]
    fn query_at_infinity() {
        let b = bary_triangle(
            p(0., 0.),
            p(1., 0.),
            p(0., 1.),
            HPoint2::new(1., 1., 0.).unwrap(),
        )
        .unwrap();
        assert_eq!(b.to_lambda(), Err(KernelError::DegenerateQuery));
    }
}
