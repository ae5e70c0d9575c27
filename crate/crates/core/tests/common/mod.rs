#![allow(dead_code)]

use hkernel::oracle::{exact_mirror, float_equals, rationals, MirrorOp};
use proptest::prelude::*;

pub fn unit() -> impl Strategy<Value = f64> {
    -1.0..1.0f64
}

pub fn tuple<const N: usize>() -> impl Strategy<Value = [f64; N]> {
    prop::array::uniform(unit())
}

pub fn int_tuple<const N: usize>(bound: i64) -> impl Strategy<Value = [f64; N]> {
    prop::array::uniform((-bound..=bound).prop_map(|v| v as f64))
}

/// Integer tuple that is not all zero.
pub fn nonzero_int_tuple<const N: usize>(bound: i64) -> impl Strategy<Value = [f64; N]> {
    int_tuple::<N>(bound).prop_filter("nonzero", |t| t.iter().any(|&v| v != 0.0))
}

pub fn nonzero_tuple<const N: usize>() -> impl Strategy<Value = [f64; N]> {
    tuple::<N>().prop_filter("nonzero", |t| t.iter().any(|&v| v != 0.0))
}

/// A power of two in `[2^-lo, 2^hi]` with random sign.
pub fn pow2(lo: i32, hi: i32) -> impl Strategy<Value = f64> {
    (-lo..=hi, any::<bool>()).prop_map(|(e, neg)| {
        let v = 2f64.powi(e);
        if neg {
            -v
        } else {
            v
        }
    })
}

pub fn max_abs(t: &[f64]) -> f64 {
    t.iter().fold(0.0f64, |m, v| m.max(v.abs()))
}

pub fn matches_exact(op: MirrorOp, inputs: &[&[f64]], out: &[f64]) -> bool {
    let q: Vec<_> = inputs.iter().map(|t| rationals(t)).collect();
    let r = exact_mirror(op, &q).expect("mirror accepts the same inputs");
    r.len() == out.len() && out.iter().zip(&r).all(|(x, r)| float_equals(*x, r))
}

pub fn bitwise_eq(a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x == y)
}
