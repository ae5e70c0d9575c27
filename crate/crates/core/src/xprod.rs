//! Extended cross products in three, four and five dimensions.
//!
//! Each product comes in two forms: the cofactor expansion of the formal
//! determinant whose first row holds the symbolic basis vectors, and the
//! antisymmetric-matrix form built from sub-determinants of the leading
//! operand rows. Evaluation order is fixed so both forms perform the same
//! floating-point operations and agree bitwise:
//!
//! * the minor belonging to each basis vector is expanded along its last
//!   operand row;
//! * 2×2 sub-determinants are `a_i b_j - a_j b_i`;
//! * 3×3 sub-determinants are expanded along their first row,
//!   `a_i |b_j b_k; c_j c_k| - a_j |b_i b_k; c_i c_k| + a_k |b_i b_j; c_i c_j|`.
//!
//! Zero components are always `+0.0`, whichever sign the arithmetic left
//! them with.
//!
//! An all-zero product means the operands are linearly dependent. It is a
//! value, not an error.

use crate::error::{KernelError, Result};
use crate::hcoords::HPoint3;

pub type Vec3 = [f64; 3];
pub type Vec4 = [f64; 4];
pub type Vec5 = [f64; 5];

#[inline]
pub fn dot<const N: usize>(a: &[f64; N], b: &[f64; N]) -> f64 {
    let mut s = 0.0;
    for i in 0..N {
        s += a[i] * b[i];
    }
    s
}

/// `a_i b_j - a_j b_i`
#[inline(always)]
fn det2(a: &[f64], b: &[f64], i: usize, j: usize) -> f64 {
    a[i] * b[j] - a[j] * b[i]
}

/// 3×3 determinant of columns `i, j, k` of rows `a, b, c`, expanded along
/// the first row.
#[inline(always)]
fn det3(a: &[f64], b: &[f64], c: &[f64], i: usize, j: usize, k: usize) -> f64 {
    a[i] * det2(b, c, j, k) - a[j] * det2(b, c, i, k) + a[k] * det2(b, c, i, j)
}

/// `+0.0` for either zero, `x` otherwise.
#[inline(always)]
fn unsigned_zero(x: f64) -> f64 {
    x + 0.0
}

#[inline(always)]
fn matvec<const N: usize>(m: &[[f64; N]; N], v: &[f64; N]) -> [f64; N] {
    let mut out = [0.0; N];
    for (o, row) in out.iter_mut().zip(m) {
        let mut s = row[0] * v[0];
        for j in 1..N {
            s += row[j] * v[j];
        }
        *o = s;
    }
    out
}

/// `a × b`, cofactor form.
#[inline]
pub fn cross3(a: &Vec3, b: &Vec3) -> Vec3 {
    [det2(a, b, 1, 2), -det2(a, b, 0, 2), det2(a, b, 0, 1)].map(unsigned_zero)
}

/// `a × b` as the skew-symmetric matrix of `a` applied to `b`.
#[inline]
pub fn cross3_matrix(a: &Vec3, b: &Vec3) -> Vec3 {
    let m = [
        [0.0, -a[2], a[1]],
        [a[2], 0.0, -a[0]],
        [-a[1], a[0], 0.0],
    ];
    matvec(&m, b).map(unsigned_zero)
}

/// `a × b × c` in four dimensions, cofactor form with signs `(+, -, +, -)`.
#[inline]
pub fn cross4(a: &Vec4, b: &Vec4, c: &Vec4) -> Vec4 {
    // Minor of basis vector k, expanded along its last row (c).
    let minor = |p: usize, q: usize, r: usize| {
        c[p] * det2(a, b, q, r) - c[q] * det2(a, b, p, r) + c[r] * det2(a, b, p, q)
    };
    [minor(1, 2, 3), -minor(0, 2, 3), minor(0, 1, 3), -minor(0, 1, 2)].map(unsigned_zero)
}

/// The six 2×2 sub-determinants of the matrix with rows `a, b`.
#[inline]
pub fn subdet2(a: &Vec4, b: &Vec4) -> PluckerLine {
    PluckerLine {
        d12: det2(a, b, 0, 1),
        d13: det2(a, b, 0, 2),
        d14: det2(a, b, 0, 3),
        d23: det2(a, b, 1, 2),
        d24: det2(a, b, 1, 3),
        d34: det2(a, b, 2, 3),
    }
}

/// `a × b × c` in four dimensions as `(-1)^(n+1) Δ c` with `n = 4`, where
/// `Δ` is the antisymmetric matrix of sub-determinants of rows `a, b`.
#[inline]
pub fn cross4_matrix(a: &Vec4, b: &Vec4, c: &Vec4) -> Vec4 {
    subdet2(a, b).apply(c)
}

/// `a × b × c × d` in five dimensions, cofactor form with signs
/// `(+, -, +, -, +)`.
#[inline]
pub fn cross5(a: &Vec5, b: &Vec5, c: &Vec5, d: &Vec5) -> Vec5 {
    // Minor of basis vector k over columns p < q < r < s, expanded along its
    // last row (d) with cofactor signs (-, +, -, +).
    let minor = |p: usize, q: usize, r: usize, s: usize| {
        -(d[p] * det3(a, b, c, q, r, s)) + d[q] * det3(a, b, c, p, r, s)
            - d[r] * det3(a, b, c, p, q, s)
            + d[s] * det3(a, b, c, p, q, r)
    };
    [
        minor(1, 2, 3, 4),
        -minor(0, 2, 3, 4),
        minor(0, 1, 3, 4),
        -minor(0, 1, 2, 4),
        minor(0, 1, 2, 3),
    ]
    .map(unsigned_zero)
}

/// `a × b × c × d` in five dimensions as `(-1)^(n+1) Δ d` with `n = 5`, where
/// `Δ` is the antisymmetric matrix of 3×3 sub-determinants of rows `a, b, c`.
#[inline]
pub fn cross5_matrix(a: &Vec5, b: &Vec5, c: &Vec5, d: &Vec5) -> Vec5 {
    SubDet3Set::from_rows(a, b, c).apply(d)
}

/// A line of projective space in Plücker coordinates: the sub-determinants
/// `d_ij` (columns `i < j`, 1-based) of the 2×4 matrix whose rows are two
/// points of the line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PluckerLine {
    pub d12: f64,
    pub d13: f64,
    pub d14: f64,
    pub d23: f64,
    pub d24: f64,
    pub d34: f64,
}

impl PluckerLine {
    pub fn to_array(&self) -> [f64; 6] {
        [self.d12, self.d13, self.d14, self.d23, self.d24, self.d34]
    }

    pub fn from_array(d: [f64; 6]) -> Self {
        let [d12, d13, d14, d23, d24, d34] = d;
        PluckerLine { d12, d13, d14, d23, d24, d34 }
    }

    /// `d12 d34 - d13 d24 + d14 d23`; zero for every line spanned by two
    /// points.
    pub fn grassmann_plucker(&self) -> f64 {
        self.d12 * self.d34 - self.d13 * self.d24 + self.d14 * self.d23
    }

    /// Sum of the magnitudes of the three products in
    /// [`grassmann_plucker`](Self::grassmann_plucker), the natural scale for
    /// its residual.
    pub fn grassmann_plucker_scale(&self) -> f64 {
        (self.d12 * self.d34).abs() + (self.d13 * self.d24).abs() + (self.d14 * self.d23).abs()
    }

    /// `-Δ x`: the plane through this line and `x`. All-zero iff `x` lies on
    /// the line, so this doubles as the point-line incidence residual.
    #[inline]
    pub fn apply(&self, x: &Vec4) -> Vec4 {
        let PluckerLine { d12, d13, d14, d23, d24, d34 } = *self;
        let m = [
            [0.0, -d34, d24, -d23],
            [d34, 0.0, -d14, d13],
            [-d24, d14, 0.0, -d12],
            [d23, -d13, d12, 0.0],
        ];
        // (-1)^(4+1)
        matvec(&m, x).map(|v| unsigned_zero(-v))
    }

    /// Direction from the first generating point towards the second,
    /// `w1 x2 - w2 x1`.
    pub fn direction(&self) -> Vec3 {
        [-self.d14, -self.d24, -self.d34]
    }
}

/// The ten 3×3 sub-determinants `d_ijk` (1-based columns) of a 3×5 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubDet3Set {
    pub d123: f64,
    pub d124: f64,
    pub d125: f64,
    pub d134: f64,
    pub d135: f64,
    pub d145: f64,
    pub d234: f64,
    pub d235: f64,
    pub d245: f64,
    pub d345: f64,
}

impl SubDet3Set {
    pub fn from_rows(a: &Vec5, b: &Vec5, c: &Vec5) -> Self {
        let d = |i, j, k| det3(a, b, c, i, j, k);
        SubDet3Set {
            d123: d(0, 1, 2),
            d124: d(0, 1, 3),
            d125: d(0, 1, 4),
            d134: d(0, 2, 3),
            d135: d(0, 2, 4),
            d145: d(0, 3, 4),
            d234: d(1, 2, 3),
            d235: d(1, 2, 4),
            d245: d(1, 3, 4),
            d345: d(2, 3, 4),
        }
    }

    /// `(-1)^(5+1) Δ v = Δ v`.
    #[inline]
    pub fn apply(&self, v: &Vec5) -> Vec5 {
        let s = self;
        let m = [
            [0.0, -s.d345, s.d245, -s.d235, s.d234],
            [s.d345, 0.0, -s.d145, s.d135, -s.d134],
            [-s.d245, s.d145, 0.0, -s.d125, s.d124],
            [s.d235, -s.d135, s.d125, 0.0, -s.d123],
            [-s.d234, s.d134, -s.d124, s.d123, 0.0],
        ];
        matvec(&m, v).map(unsigned_zero)
    }
}

/// Plücker coordinates of the line through two points.
pub fn plucker_from_points(x1: HPoint3, x2: HPoint3) -> Result<PluckerLine> {
    let line = subdet2(x1.as_array(), x2.as_array());
    let d = line.to_array();
    if d.iter().any(|v| !v.is_finite()) {
        return Err(KernelError::NonFinite);
    }
    if d.iter().all(|&v| v == 0.0) {
        return Err(KernelError::DegenerateLine);
    }
    Ok(line)
}
