#![cfg(feature = "instrument")]

use hkernel::counting::{counts, reset_counts, Counted, OpCounts};
use hkernel::interp::{lerp_monotonic_terms, lerp_rational_terms};

fn c<const N: usize>(v: [f64; N]) -> [Counted; N] {
    v.map(Counted)
}

#[test]
fn rational_lerp_in_3d_costs_six_plus_one_multiplications() {
    reset_counts();
    let out = lerp_rational_terms(c([1.0, 2.0, 3.0, 2.0]), c([4.0, 5.0, 6.0, 3.0]), Counted(0.25));
    let n = counts();
    assert_eq!(n.div, 0);
    // Two cross-weight products per coordinate plus w2 w1, and one product
    // with t per coordinate, which the Euclidean lerp needs as well.
    assert_eq!(n.mul, 6 + 1 + 3);
    assert_eq!(out.map(|x| x.0), [3.0 + 5.0 * 0.25, 6.0 + 4.0 * 0.25, 9.0 + 3.0 * 0.25, 6.0]);
}

#[test]
fn rational_lerp_in_2d() {
    reset_counts();
    lerp_rational_terms(c([1.0, 2.0, 2.0]), c([4.0, 5.0, 3.0]), Counted(0.5));
    let n = counts();
    assert_eq!(n, OpCounts { add: 2, sub: 2, mul: 4 + 1 + 2, div: 0, neg: 0 });
}

#[test]
fn monotonic_lerp_has_no_division() {
    reset_counts();
    lerp_monotonic_terms(c([1.0, 2.0, 3.0, 2.0]), c([4.0, 5.0, 6.0, 3.0]), Counted(0.25));
    let n = counts();
    assert_eq!(n.div, 0);
    assert_eq!(n.mul, 4);
}
