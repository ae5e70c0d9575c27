//! Homogeneous-coordinate value types.
//!
//! Every tuple stores its homogeneous coordinate last (`w`-last ordering).
//! A tuple with `w = 0` is a valid value: it denotes a point at infinity
//! (a direction). Only the conversion to Euclidean coordinates rejects it.

use crate::error::{KernelError, Result};

/// Checks the invariants shared by every homogeneous tuple: all components
/// finite, not all zero.
pub(crate) fn validate(t: &[f64]) -> Result<()> {
    if t.iter().any(|c| !c.is_finite()) {
        return Err(KernelError::NonFinite);
    }
    if is_zero(t) {
        return Err(KernelError::DegenerateInput);
    }
    Ok(())
}

/// Exact all-zero test. `-0.0` counts as zero.
pub fn is_zero(t: &[f64]) -> bool {
    t.iter().all(|&c| c == 0.0)
}

macro_rules! homogeneous_type {
    ($(#[$doc:meta])* $name:ident, $n:literal, [$($field:ident),+]) => {
        $(#[$doc])*
        #[derive(Debug, Clone, Copy, PartialEq)]
        pub struct $name([f64; $n]);

        impl $name {
            pub fn new($($field: f64),+) -> Result<Self> {
                Self::from_array([$($field),+])
            }

            pub fn from_array(c: [f64; $n]) -> Result<Self> {
                validate(&c)?;
                Ok(Self(c))
            }

            #[inline]
            pub fn as_array(&self) -> &[f64; $n] {
                &self.0
            }

            #[inline]
            pub fn to_array(self) -> [f64; $n] {
                self.0
            }

            /// The same projective element rescaled by a power of two so its
            /// largest component lies in `[1, 2)`.
            pub fn normalized(self) -> Self {
                let s = normalize_exponents(self.0).expect("validated tuples are finite and nonzero");
                Self(s.tuple)
            }

            homogeneous_type!(@accessors 0, $($field),+);
        }

        impl TryFrom<[f64; $n]> for $name {
            type Error = KernelError;

            fn try_from(c: [f64; $n]) -> Result<Self> {
                Self::from_array(c)
            }
        }

        impl From<$name> for [f64; $n] {
            fn from(v: $name) -> [f64; $n] {
                v.0
            }
        }
    };
    (@accessors $idx:expr, $field:ident $(, $rest:ident)*) => {
        #[inline]
        pub fn $field(&self) -> f64 {
            self.0[$idx]
        }
        homogeneous_type!(@accessors $idx + 1 $(, $rest)*);
    };
    (@accessors $idx:expr) => {};
}

homogeneous_type!(
    /// A point of the projective plane, `[x, y, w]`.
    HPoint2, 3, [x, y, w]
);
homogeneous_type!(
    /// A line `a x + b y + c w = 0` of the projective plane.
    HLine2, 3, [a, b, c]
);
homogeneous_type!(
    /// A point of projective space, `[x, y, z, w]`.
    HPoint3, 4, [x, y, z, w]
);
homogeneous_type!(
    /// A plane `a x + b y + c z + d w = 0`; `[a, b, c]` is its normal.
    HPlane, 4, [a, b, c, d]
);

impl HPoint2 {
    pub fn is_ideal(&self) -> bool {
        self.w() == 0.0
    }
}

impl HPoint3 {
    pub fn is_ideal(&self) -> bool {
        self.w() == 0.0
    }
}

impl HLine2 {
    /// The line at infinity, `[0, 0, c]`.
    pub fn is_ideal(&self) -> bool {
        self.a() == 0.0 && self.b() == 0.0
    }
}

impl HPlane {
    pub fn normal(&self) -> [f64; 3] {
        [self.a(), self.b(), self.c()]
    }

    pub fn is_ideal(&self) -> bool {
        self.normal() == [0.0; 3]
    }
}

/// Points that can be interpolated and projected to Euclidean space.
pub trait HomogeneousPoint<const N: usize>: Copy {
    fn coords(&self) -> [f64; N];
    fn from_coords(c: [f64; N]) -> Result<Self>;
}

impl HomogeneousPoint<3> for HPoint2 {
    fn coords(&self) -> [f64; 3] {
        self.0
    }
    fn from_coords(c: [f64; 3]) -> Result<Self> {
        Self::from_array(c)
    }
}

impl HomogeneousPoint<4> for HPoint3 {
    fn coords(&self) -> [f64; 4] {
        self.0
    }
    fn from_coords(c: [f64; 4]) -> Result<Self> {
        Self::from_array(c)
    }
}

/// `(x / w, y / w)`. Ideal points are rejected.
pub fn to_euclidean(p: HPoint2) -> Result<(f64, f64)> {
    let [x, y] = euclidean_coords(&p.coords())?;
    Ok((x, y))
}

pub fn to_euclidean3(p: HPoint3) -> Result<[f64; 3]> {
    euclidean_coords(&p.coords())
}

/// Divides the leading `M` components by the trailing homogeneous one.
/// `N` must equal `M + 1`.
pub fn euclidean_coords<const N: usize, const M: usize>(c: &[f64; N]) -> Result<[f64; M]> {
    assert_eq!(N, M + 1, "homogeneous tuple must carry exactly one extra component");
    let w = c[M];
    if w == 0.0 {
        return Err(KernelError::IdealPoint);
    }
    let mut out = [0.0; M];
    for (o, &v) in out.iter_mut().zip(c) {
        // Zeros come out as +0.0 whatever the sign of w.
        *o = v / w + 0.0;
    }
    Ok(out)
}

/// `[X, Y, 1]`.
///
/// # Panics
///
/// If either coordinate is not finite.
pub fn from_euclidean(x: f64, y: f64) -> HPoint2 {
    assert!(x.is_finite() && y.is_finite(), "Euclidean coordinates must be finite");
    HPoint2([x, y, 1.0])
}

pub fn from_euclidean3(x: f64, y: f64, z: f64) -> HPoint3 {
    assert!(
        x.is_finite() && y.is_finite() && z.is_finite(),
        "Euclidean coordinates must be finite"
    );
    HPoint3([x, y, z, 1.0])
}

fn argmax_abs(t: &[f64]) -> usize {
    let mut best = 0;
    for (i, c) in t.iter().enumerate() {
        if c.abs() > t[best].abs() {
            best = i;
        }
    }
    best
}

/// Canonical representative of a projective class: the largest-magnitude
/// component is scaled to 1 in absolute value and the first nonzero
/// component is made positive.
pub fn canonicalize<const N: usize>(t: [f64; N]) -> Result<[f64; N]> {
    if is_zero(&t) {
        return Err(KernelError::DegenerateInput);
    }
    let scale = t[argmax_abs(&t)].abs();
    let first = t.iter().copied().find(|&c| c != 0.0).unwrap_or(1.0);
    let s = if first < 0.0 { -scale } else { scale };
    Ok(t.map(|c| c / s))
}

/// Whether `u ≅ ξ v` for some `ξ ≠ 0`, componentwise within `rel_tol`
/// relative to the largest component.
///
/// Both tuples are divided by their signed component at the index where `u`
/// is largest in magnitude, so no sign convention is needed and rounding
/// noise in small entries cannot flip the comparison. The check runs in both
/// directions so the relation is symmetric.
pub fn projectively_equal(u: &[f64], v: &[f64], rel_tol: f64) -> Result<bool> {
    if u.len() != v.len() {
        return Err(KernelError::ArityMismatch);
    }
    if is_zero(u) || is_zero(v) {
        return Err(KernelError::DegenerateInput);
    }
    Ok(pivot_match(u, v, rel_tol) && pivot_match(v, u, rel_tol))
}

fn pivot_match(u: &[f64], v: &[f64], rel_tol: f64) -> bool {
    let k = argmax_abs(u);
    let (pu, pv) = (u[k], v[k]);
    if pv == 0.0 {
        return false;
    }
    u.iter()
        .zip(v)
        .all(|(&a, &b)| (a / pu - b / pv).abs() <= rel_tol)
}

/// A homogeneous tuple together with a base-two exponent offset; the
/// represented value is `tuple * 2^exp2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledValue<const N: usize> {
    pub tuple: [f64; N],
    pub exp2: i32,
}

impl<const N: usize> ScaledValue<N> {
    /// `tuple * 2^exp2`. May overflow when the offset is large; the tuple
    /// alone is already a representative of the same projective class.
    pub fn value(&self) -> [f64; N] {
        self.tuple.map(|c| ldexp(c, self.exp2))
    }
}

/// Rescales `t` by an exact power of two so that its largest component lies
/// in `[1, 2)`.
///
/// Mantissas are untouched, so the projective class is preserved exactly.
/// Components more than ~2^1074 below the largest one flush to zero.
pub fn normalize_exponents<const N: usize>(t: [f64; N]) -> Result<ScaledValue<N>> {
    validate(&t)?;
    let e = exponent_of(t[argmax_abs(&t)]);
    Ok(ScaledValue {
        tuple: t.map(|c| ldexp(c, -e)),
        exp2: e,
    })
}

/// `floor(log2(|x|))` for finite nonzero `x`.
pub(crate) fn exponent_of(x: f64) -> i32 {
    let bits = x.abs().to_bits();
    let biased = (bits >> 52) as i32;
    if biased == 0 {
        let mantissa = bits & ((1u64 << 52) - 1);
        -1074 + (63 - mantissa.leading_zeros() as i32)
    } else {
        biased - 1023
    }
}

fn pow2(k: i32) -> f64 {
    debug_assert!((-1022..=1023).contains(&k));
    f64::from_bits(((k + 1023) as u64) << 52)
}

/// `x * 2^e`, exact unless the result leaves the normal range.
pub fn ldexp(mut x: f64, mut e: i32) -> f64 {
    while e > 1023 {
        x *= pow2(1023);
        e -= 1023;
    }
    while e < -1022 {
        x *= pow2(-1022);
        e += 1022;
    }
    x * pow2(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euclidean_conversion_examples() {
        assert_eq!(to_euclidean(HPoint2::new(2.0, 4.0, 2.0).unwrap()), Ok((1.0, 2.0)));
        assert_eq!(to_euclidean(HPoint2::new(3.0, -6.0, 1.0).unwrap()), Ok((3.0, -6.0)));
        assert_eq!(
            to_euclidean(HPoint2::new(1.0, 0.0, 0.0).unwrap()),
            Err(KernelError::IdealPoint)
        );
        assert_eq!(from_euclidean(1.0, 2.0).to_array(), [1.0, 2.0, 1.0]);
        assert_eq!(from_euclidean(0.0, 0.0).to_array(), [0.0, 0.0, 1.0]);
        assert_eq!(from_euclidean(-3.5, 7.0).to_array(), [-3.5, 7.0, 1.0]);
    }

    #[test]
    fn constructors_enforce_invariants() {
        assert_eq!(HPoint2::new(0.0, 0.0, 0.0), Err(KernelError::DegenerateInput));
        assert_eq!(HPlane::new(0.0, f64::NAN, 1.0, 0.0), Err(KernelError::NonFinite));
        assert_eq!(HPoint3::new(f64::INFINITY, 0.0, 0.0, 1.0), Err(KernelError::NonFinite));
        // w = 0 is a direction, not an error.
        assert!(HPoint2::new(1.0, 0.0, 0.0).unwrap().is_ideal());
        assert!(HLine2::new(0.0, 0.0, 3.0).unwrap().is_ideal());
        assert!(!HLine2::new(0.0, 1.0, 3.0).unwrap().is_ideal());
    }

    #[test]
    fn projective_equality_examples() {
        assert_eq!(projectively_equal(&[1., 2., 1.], &[2., 4., 2.], 1e-12), Ok(true));
        assert_eq!(projectively_equal(&[1., 0., 0.], &[0., 1., 0.], 1e-12), Ok(false));
        assert_eq!(projectively_equal(&[1., 2., 1.], &[-1., -2., -1.], 1e-12), Ok(true));
        assert_eq!(
            projectively_equal(&[0., 0., 0.], &[1., 2., 1.], 1e-12),
            Err(KernelError::DegenerateInput)
        );
        assert_eq!(
            projectively_equal(&[1., 2.], &[1., 2., 1.], 1e-12),
            Err(KernelError::ArityMismatch)
        );
    }

    #[test]
    fn projective_equality_tolerates_noise_in_small_leading_entry() {
        let u = [-1e-17, 1.0, 1.0];
        let v = [0.0, 2.0, 2.0];
        assert_eq!(projectively_equal(&u, &v, 1e-12), Ok(true));
    }

    #[test]
    fn canonical_representative() {
        assert_eq!(canonicalize([-2.0, 4.0, 0.0]), Ok([1.0, -2.0, 0.0].map(|c: f64| c / 2.0)));
        assert_eq!(canonicalize([0.0, -3.0, 1.5]), Ok([0.0, 1.0, -0.5]));
    }

    #[test]
    fn normalize_exponent_examples() {
        let s = normalize_exponents([4.0, 8.0, 2.0]).unwrap();
        assert_eq!(s.tuple, [0.5, 1.0, 0.25]);
        assert_eq!(s.exp2, 3);

        let s = normalize_exponents([1.0, 0.0, 0.0]).unwrap();
        assert_eq!(s.tuple, [1.0, 0.0, 0.0]);
        assert_eq!(s.exp2, 0);

        assert_eq!(normalize_exponents([0.0; 3]), Err(KernelError::DegenerateInput));
    }

    #[test]
    fn normalize_huge_tuple_round_trips() {
        let t = [1e200, 2e200, 1e200];
        let s = normalize_exponents(t).unwrap();
        // 2e200 = 1.2 * 2^665
        assert_eq!(s.exp2, 665);
        let m = s.tuple.iter().fold(0.0f64, |a, c| a.max(c.abs()));
        assert!((0.5..2.0).contains(&m));
        assert_eq!(s.value(), t);
        // The scaled mantissas are bit-identical to the inputs'.
        for (a, b) in s.tuple.iter().zip(&t) {
            assert_eq!(a.to_bits() & ((1 << 52) - 1), b.to_bits() & ((1 << 52) - 1));
        }
    }

    #[test]
    fn exponent_of_subnormals() {
        assert_eq!(exponent_of(f64::from_bits(1)), -1074);
        assert_eq!(exponent_of(f64::MIN_POSITIVE), -1022);
        assert_eq!(exponent_of(f64::MIN_POSITIVE / 2.0), -1023);
        assert_eq!(exponent_of(-3.0), 1);
        let s = normalize_exponents([f64::from_bits(3), 0.0]).unwrap();
        assert_eq!(s.tuple, [1.5, 0.0]);
        assert_eq!(s.exp2, -1073);
    }

    #[test]
    fn ldexp_spans_the_full_range() {
        assert_eq!(ldexp(1.0, 1023), f64::MAX / (2.0 - f64::EPSILON));
        assert_eq!(ldexp(1.0, -1074), f64::from_bits(1));
        assert_eq!(ldexp(3.0, -1074), f64::from_bits(3));
        assert_eq!(ldexp(f64::from_bits(3), 1074), 3.0);
    }
}
