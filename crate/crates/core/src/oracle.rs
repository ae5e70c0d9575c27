//! Reference implementations used to check the kernel.
//!
//! Nothing here shares code with [`crate::xprod`]: determinants are
//! evaluated with Sarrus' rule, the Leibniz permutation sum, or elimination,
//! so agreement with the kernel is evidence rather than tautology. The exact
//! mirror works on arbitrary-precision rationals and is slow by design.

use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{KernelError, Result};
use crate::hcoords::HPlane;

/// Exact rational number: reduced, positive denominator.
pub type Rational = BigRational;

/// Exact value of a finite float.
///
/// # Panics
///
/// On NaN or infinity.
pub fn rational(x: f64) -> Rational {
    Rational::from_float(x).expect("only finite values have an exact rational form")
}

pub fn rationals(xs: &[f64]) -> Vec<Rational> {
    xs.iter().map(|&x| rational(x)).collect()
}

/// Whether `x` is exactly the rational `r`.
pub fn float_equals(x: f64, r: &Rational) -> bool {
    x.is_finite() && rational(x) == *r
}

/// Nearest float to `r` (round-to-nearest via the reduced fraction).
pub fn to_f64(r: &Rational) -> f64 {
    // Scale numerator and denominator to at most ~1000 bits before dividing
    // in floating point; the result is faithful, which is all the callers
    // (error measurement) need.
    let num = r.numer();
    let den = r.denom();
    let nb = num.bits() as i64;
    let db = den.bits() as i64;
    let shift_n = (nb - 900).max(0);
    let shift_d = (db - 900).max(0);
    let n = big_to_f64(&(num >> shift_n as usize));
    let d = big_to_f64(&(den >> shift_d as usize));
    crate::hcoords::ldexp(n / d, (shift_n - shift_d) as i32)
}

fn big_to_f64(x: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

// ---------------------------------------------------------------------------
// Floating-point solvers

fn det2(m: &[[f64; 2]; 2]) -> f64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

/// Sarrus' rule.
fn det3(m: &[[f64; 3]; 3]) -> f64 {
    m[0][0] * m[1][1] * m[2][2] + m[0][1] * m[1][2] * m[2][0] + m[0][2] * m[1][0] * m[2][1]
        - m[0][2] * m[1][1] * m[2][0]
        - m[0][0] * m[1][2] * m[2][1]
        - m[0][1] * m[1][0] * m[2][2]
}

fn replace_column<const N: usize>(a: &[[f64; N]; N], col: usize, b: &[f64; N]) -> [[f64; N]; N] {
    let mut m = *a;
    for (row, &v) in m.iter_mut().zip(b) {
        row[col] = v;
    }
    m
}

/// Cramer's rule for a 2×2 system `A x = b`.
pub fn cramer2(a: [[f64; 2]; 2], b: [f64; 2]) -> Result<[f64; 2]> {
    let det = det2(&a);
    if det == 0.0 {
        return Err(KernelError::SingularMatrix);
    }
    Ok([0, 1].map(|i| det2(&replace_column(&a, i, &b)) / det))
}

/// Cramer's rule for a 3×3 system `A x = b`.
pub fn cramer3(a: [[f64; 3]; 3], b: [f64; 3]) -> Result<[f64; 3]> {
    let det = det3(&a);
    if det == 0.0 {
        return Err(KernelError::SingularMatrix);
    }
    Ok([0, 1, 2].map(|i| det3(&replace_column(&a, i, &b)) / det))
}

/// Gaussian elimination with partial pivoting.
pub fn solve_linear<const N: usize>(a: [[f64; N]; N], b: [f64; N]) -> Result<[f64; N]> {
    let mut m = a;
    let mut rhs = b;
    for col in 0..N {
        let pivot = (col..N)
            .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
            .unwrap();
        if m[pivot][col] == 0.0 {
            return Err(KernelError::SingularMatrix);
        }
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        for row in col + 1..N {
            let f = m[row][col] / m[col][col];
            for k in col..N {
                m[row][k] -= f * m[col][k];
            }
            rhs[row] -= f * rhs[col];
        }
    }
    let mut x = [0.0; N];
    for row in (0..N).rev() {
        let mut s = rhs[row];
        for k in row + 1..N {
            s -= m[row][k] * x[k];
        }
        x[row] = s / m[row][row];
    }
    Ok(x)
}

fn inf_norm<const N: usize>(a: &[[f64; N]; N]) -> f64 {
    a.iter()
        .map(|row| row.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// `‖A‖∞ ‖A⁻¹‖∞`, infinite for singular matrices.
pub fn condition_number<const N: usize>(a: [[f64; N]; N]) -> f64 {
    let mut inv = [[0.0; N]; N];
    for col in 0..N {
        let mut e = [0.0; N];
        e[col] = 1.0;
        match solve_linear(a, e) {
            Ok(x) => {
                for row in 0..N {
                    inv[row][col] = x[row];
                }
            }
            Err(_) => return f64::INFINITY,
        }
    }
    inf_norm(&a) * inf_norm(&inv)
}

// ---------------------------------------------------------------------------
// Classic two-plane intersection

/// Which transcription of the closed-form two-plane formula produced the
/// oracle point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoPlaneVariant {
    /// The closed form, as printed, passed the incidence self-check.
    ClosedForm,
    /// The closed form failed the self-check; the point comes from solving
    /// `{r1, r2, [s; 0]}` with Cramer's rule.
    CramerFallback,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoPlaneLine {
    pub point: [f64; 3],
    pub direction: [f64; 3],
    pub variant: TwoPlaneVariant,
}

/// Relative incidence residual accepted by the closed-form self-check.
pub const TWO_PLANE_SELF_CHECK_TOL: f64 = 1e-8;

fn minor(p: f64, q: f64, r: f64, s: f64) -> f64 {
    p * s - q * r
}

/// Euclidean intersection of two planes: direction `s = n1 × n2` and the
/// line point closest to the origin from the closed-form minors formula,
/// divided by `DET = det[n1; n2; s]`.
pub fn euclid_two_planes(r1: HPlane, r2: HPlane) -> Result<TwoPlaneLine> {
    let [a1, b1, c1, d1] = r1.to_array();
    let [a2, b2, c2, d2] = r2.to_array();
    let a3 = b1 * c2 - c1 * b2;
    let b3 = c1 * a2 - a1 * c2;
    let c3 = a1 * b2 - b1 * a2;
    let m = [[a1, b1, c1], [a2, b2, c2], [a3, b3, c3]];
    let det = det3(&m);
    if det == 0.0 || !det.is_finite() {
        return Err(KernelError::ParallelPlanes);
    }
    let x0 = (d2 * minor(b1, c1, b3, c3) - d1 * minor(b2, c2, b3, c3)) / det;
    let y0 = (d2 * minor(a3, c3, a1, c1) - d1 * minor(a3, c3, a2, c2)) / det;
    let z0 = (d2 * minor(a1, b1, a3, b3) - d1 * minor(a2, b2, a3, b3)) / det;
    let point = [x0, y0, z0];
    let direction = [a3, b3, c3];

    let on_plane = |r: &[f64; 4]| {
        let lhs = r[0] * point[0] + r[1] * point[1] + r[2] * point[2] + r[3];
        let scale = r[0].abs() * point[0].abs()
            + r[1].abs() * point[1].abs()
            + r[2].abs() * point[2].abs()
            + r[3].abs();
        lhs.abs() <= TWO_PLANE_SELF_CHECK_TOL * scale
    };
    if on_plane(r1.as_array()) && on_plane(r2.as_array()) {
        return Ok(TwoPlaneLine { point, direction, variant: TwoPlaneVariant::ClosedForm });
    }
    let point = cramer3(m, [-d1, -d2, 0.0]).map_err(|_| KernelError::ParallelPlanes)?;
    Ok(TwoPlaneLine { point, direction, variant: TwoPlaneVariant::CramerFallback })
}

// ---------------------------------------------------------------------------
// Exact arithmetic

/// Permutations of `0..n` with their parity (`true` when odd).
type Perms = Vec<(Vec<usize>, bool)>;

fn permutations(n: usize) -> &'static Perms {
    static CACHE: [OnceLock<Perms>; 6] = [const { OnceLock::new() }; 6];
    assert!(n < CACHE.len(), "exact determinants are limited to 5x5");
    CACHE[n].get_or_init(|| {
        let mut out = Vec::new();
        let mut perm: Vec<usize> = (0..n).collect();
        permute(&mut perm, 0, false, &mut out);
        out
    })
}

fn permute(perm: &mut Vec<usize>, k: usize, odd: bool, out: &mut Perms) {
    if k == perm.len() {
        out.push((perm.clone(), odd));
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute(perm, k + 1, odd ^ (i != k), out);
        perm.swap(k, i);
    }
}

/// Leibniz determinant of a square integer matrix.
fn det_int(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut total = BigInt::zero();
    for (perm, odd) in permutations(n) {
        let mut term = BigInt::one();
        for (row, &col) in perm.iter().enumerate() {
            if m[row][col].is_zero() {
                term = BigInt::zero();
                break;
            }
            term *= &m[row][col];
        }
        if *odd {
            total -= term;
        } else {
            total += term;
        }
    }
    total
}

/// Scales each row by the lcm of its denominators. Returns the integer rows
/// and the product of the scale factors.
fn clear_denominators(rows: &[Vec<Rational>]) -> (Vec<Vec<BigInt>>, BigInt) {
    use num_integer::Integer;
    let mut scale = BigInt::one();
    let ints = rows
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
            scale *= &l;
            row.iter()
                .map(|r| r.numer() * (&l / r.denom()))
                .collect::<Vec<_>>()
        })
        .collect();
    (ints, scale)
}

/// Exact determinant of a square rational matrix.
pub fn exact_det(rows: &[Vec<Rational>]) -> Rational {
    let (ints, scale) = clear_denominators(rows);
    Rational::new(det_int(&ints), scale)
}

/// Exact generalized cross product of `n - 1` rows of length `n`: component
/// `k` is `(-1)^k` times the determinant of the rows with column `k` removed.
pub fn exact_cross(rows: &[Vec<Rational>]) -> Result<Vec<Rational>> {
    let n = rows.len() + 1;
    if rows.iter().any(|r| r.len() != n) {
        return Err(KernelError::ArityMismatch);
    }
    let (ints, scale) = clear_denominators(rows);
    Ok((0..n)
        .map(|k| {
            let minor: Vec<Vec<BigInt>> = ints
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != k)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let d = det_int(&minor);
            let d = if k % 2 == 1 { -d } else { d };
            Rational::new(d, scale.clone())
        })
        .collect())
}

/// Exact solution of `A x = b` by Cramer's rule over the rationals.
pub fn exact_solve(a: &[Vec<Rational>], b: &[Rational]) -> Result<Vec<Rational>> {
    let n = a.len();
    if b.len() != n || a.iter().any(|r| r.len() != n) {
        return Err(KernelError::ArityMismatch);
    }
    // Clearing the augmented rows scales det(A) and every det(A_i) alike.
    let augmented: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| row.iter().cloned().chain(std::iter::once(bi.clone())).collect())
        .collect();
    let (ints, _) = clear_denominators(&augmented);
    let matrix: Vec<Vec<BigInt>> = ints.iter().map(|r| r[..n].to_vec()).collect();
    let det = det_int(&matrix);
    if det.is_zero() {
        return Err(KernelError::SingularMatrix);
    }
    Ok((0..n)
        .map(|i| {
            let mut ai = matrix.clone();
            for (row, full) in ai.iter_mut().zip(&ints) {
                row[i] = full[n].clone();
            }
            Rational::new(det_int(&ai), det.clone())
        })
        .collect())
}

/// Exact Euclidean coordinates of a homogeneous tuple.
pub fn exact_euclidean(h: &[Rational]) -> Result<Vec<Rational>> {
    let (w, spatial) = h.split_last().ok_or(KernelError::ArityMismatch)?;
    if w.is_zero() {
        return Err(KernelError::IdealPoint);
    }
    Ok(spatial.iter().map(|c| c / w).collect())
}

/// Exact Euclidean barycentric coordinates of `query` with respect to the
/// simplex `vertices` (homogeneous, `w`-last), from the Euclidean system
/// `sum λ_i X_i = X_0, sum λ_i = 1`.
pub fn exact_barycentric(vertices: &[Vec<Rational>], query: &[Rational]) -> Result<Vec<Rational>> {
    let n = vertices.len();
    let eucl: Vec<Vec<Rational>> = vertices
        .iter()
        .map(|v| exact_euclidean(v))
        .collect::<Result<_>>()?;
    let q = exact_euclidean(query)?;
    if q.len() + 1 != n || eucl.iter().any(|v| v.len() + 1 != n) {
        return Err(KernelError::ArityMismatch);
    }
    let mut a = vec![vec![Rational::zero(); n]; n];
    for (j, v) in eucl.iter().enumerate() {
        for (i, c) in v.iter().enumerate() {
            a[i][j] = c.clone();
        }
        a[n - 1][j] = Rational::one();
    }
    let mut b = q;
    b.push(Rational::one());
    exact_solve(&a, &b)
}

/// Operations mirrored by [`exact_mirror`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MirrorOp {
    Cross3,
    Cross4,
    Cross5,
    MeetLines,
    JoinPoints,
    PlaneFromPoints,
    MeetThreePlanes,
    MeetTwoPlanes,
    PluckerFromPoints,
    BaryTriangle,
    BaryTetrahedron,
    LerpRational,
}

impl MirrorOp {
    pub const ALL: [MirrorOp; 12] = [
        MirrorOp::Cross3,
        MirrorOp::Cross4,
        MirrorOp::Cross5,
        MirrorOp::MeetLines,
        MirrorOp::JoinPoints,
        MirrorOp::PlaneFromPoints,
        MirrorOp::MeetThreePlanes,
        MirrorOp::MeetTwoPlanes,
        MirrorOp::PluckerFromPoints,
        MirrorOp::BaryTriangle,
        MirrorOp::BaryTetrahedron,
        MirrorOp::LerpRational,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            MirrorOp::Cross3 => "cross3",
            MirrorOp::Cross4 => "cross4",
            MirrorOp::Cross5 => "cross5",
            MirrorOp::MeetLines => "meet_lines",
            MirrorOp::JoinPoints => "join_points",
            MirrorOp::PlaneFromPoints => "plane_from_points",
            MirrorOp::MeetThreePlanes => "meet_three_planes",
            MirrorOp::MeetTwoPlanes => "meet_two_planes",
            MirrorOp::PluckerFromPoints => "plucker_from_points",
            MirrorOp::BaryTriangle => "bary_triangle",
            MirrorOp::BaryTetrahedron => "bary_tetrahedron",
            MirrorOp::LerpRational => "lerp_rational",
        }
    }
}

impl FromStr for MirrorOp {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        MirrorOp::ALL
            .into_iter()
            .find(|op| op.name() == s)
            .ok_or_else(|| format!("unknown mirrored operation `{s}`"))
    }
}

fn expect_shape(inputs: &[Vec<Rational>], count: usize, len: usize) -> Result<()> {
    if inputs.len() != count || inputs.iter().any(|t| t.len() != len) {
        return Err(KernelError::ArityMismatch);
    }
    Ok(())
}

fn nonzero(t: Vec<Rational>, err: KernelError) -> Result<Vec<Rational>> {
    if t.iter().all(Zero::is_zero) {
        Err(err)
    } else {
        Ok(t)
    }
}

/// Transposes point tuples into coordinate rows (`x`-row, `y`-row, ...,
/// `w`-row), the layout of the barycentric systems.
fn coordinate_rows(points: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let len = points[0].len();
    (0..len)
        .map(|i| points.iter().map(|p| p[i].clone()).collect())
        .collect()
}

/// Exact rational evaluation of a kernel operation.
///
/// Outputs follow the kernel's tuple layout; `meet_two_planes` yields the
/// homogeneous point followed by the direction, `plucker_from_points` the
/// six sub-determinants `d12, d13, d14, d23, d24, d34`, and `lerp_rational`
/// takes its parameter as a one-element third input.
pub fn exact_mirror(op: MirrorOp, inputs: &[Vec<Rational>]) -> Result<Vec<Rational>> {
    match op {
        MirrorOp::Cross3 => {
            expect_shape(inputs, 2, 3)?;
            exact_cross(inputs)
        }
        MirrorOp::Cross4 => {
            expect_shape(inputs, 3, 4)?;
            exact_cross(inputs)
        }
        MirrorOp::Cross5 => {
            expect_shape(inputs, 4, 5)?;
            exact_cross(inputs)
        }
        MirrorOp::MeetLines | MirrorOp::JoinPoints => {
            expect_shape(inputs, 2, 3)?;
            nonzero(exact_cross(inputs)?, KernelError::DegenerateInput)
        }
        MirrorOp::PlaneFromPoints | MirrorOp::MeetThreePlanes => {
            expect_shape(inputs, 3, 4)?;
            nonzero(exact_cross(inputs)?, KernelError::DegenerateInput)
        }
        MirrorOp::MeetTwoPlanes => {
            expect_shape(inputs, 2, 4)?;
            let normals: Vec<Vec<Rational>> = inputs.iter().map(|r| r[..3].to_vec()).collect();
            let s = nonzero(exact_cross(&normals)?, KernelError::ParallelPlanes)?;
            let mut aux = s.clone();
            aux.push(Rational::zero());
            let rows = vec![inputs[0].clone(), inputs[1].clone(), aux];
            let mut out = exact_cross(&rows)?;
            out.extend(s);
            Ok(out)
        }
        MirrorOp::PluckerFromPoints => {
            expect_shape(inputs, 2, 4)?;
            let (a, b) = (&inputs[0], &inputs[1]);
            let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
            let d = pairs
                .iter()
                .map(|&(i, j)| &a[i] * &b[j] - &a[j] * &b[i])
                .collect();
            nonzero(d, KernelError::DegenerateLine)
        }
        MirrorOp::BaryTriangle | MirrorOp::BaryTetrahedron => {
            let (count, len, err) = if op == MirrorOp::BaryTriangle {
                (4, 3, KernelError::DegenerateTriangle)
            } else {
                (5, 4, KernelError::DegenerateTetrahedron)
            };
            expect_shape(inputs, count, len)?;
            let xi = nonzero(exact_cross(&coordinate_rows(inputs))?, err)?;
            if xi.last().is_some_and(Zero::is_zero) {
                return Err(err);
            }
            Ok(xi)
        }
        MirrorOp::LerpRational => {
            if inputs.len() != 3 || inputs[2].len() != 1 || inputs[0].len() != inputs[1].len() {
                return Err(KernelError::ArityMismatch);
            }
            let (p1, p2, t) = (&inputs[0], &inputs[1], &inputs[2][0]);
            let n = p1.len();
            let (w1, w2) = (&p1[n - 1], &p2[n - 1]);
            if w1.is_zero() || w2.is_zero() {
                return Err(KernelError::IdealEndpoint);
            }
            let mut out: Vec<Rational> = (0..n - 1)
                .map(|i| w2 * &p1[i] + (w1 * &p2[i] - w2 * &p1[i]) * t)
                .collect();
            out.push(w2 * w1);
            Ok(out)
        }
    }
}

/// Relative distance `‖x - r‖∞ / ‖r‖∞` between a float tuple and an exact
/// one, evaluated exactly and rounded at the end. Infinite when `x` is not
/// finite; `‖x - r‖∞` when `r` is zero.
pub fn relative_error(x: &[f64], r: &[Rational]) -> f64 {
    if x.iter().any(|v| !v.is_finite()) {
        return f64::INFINITY;
    }
    let diff = x
        .iter()
        .zip(r)
        .map(|(&a, b)| (rational(a) - b).abs())
        .max()
        .unwrap_or_else(Rational::zero);
    let norm = r.iter().map(|v| v.abs()).max().unwrap_or_else(Rational::zero);
    if norm.is_zero() {
        to_f64(&diff)
    } else {
        to_f64(&(diff / norm))
    }
}
