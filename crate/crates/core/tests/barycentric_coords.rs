mod common;

use common::*;
use hkernel::oracle::{exact_barycentric, float_equals, rationals, solve_linear, MirrorOp};
use hkernel::*;
use proptest::prelude::*;

fn pt2() -> impl Strategy<Value = [f64; 2]> {
    prop::array::uniform(-1.0..1.0f64)
}

fn pt3() -> impl Strategy<Value = [f64; 3]> {
    prop::array::uniform(-1.0..1.0f64)
}

fn triangle_area2(v: &[[f64; 2]]) -> f64 {
    (v[1][0] - v[0][0]) * (v[2][1] - v[0][1]) - (v[2][0] - v[0][0]) * (v[1][1] - v[0][1])
}

fn h2(p: [f64; 2]) -> HPoint2 {
    from_euclidean(p[0], p[1])
}

fn h3(p: [f64; 3]) -> HPoint3 {
    from_euclidean3(p[0], p[1], p[2])
}

proptest! {
    #[test]
    fn triangle_weights_sum_to_one_and_reconstruct(v in prop::array::uniform4(pt2())) {
        prop_assume!(triangle_area2(&v).abs() > 0.05);
        let b = bary_triangle(h2(v[0]), h2(v[1]), h2(v[2]), h2(v[3])).unwrap();
        let l = bary_to_euclidean(&b).unwrap();
        prop_assert!((l.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        for k in 0..2 {
            let r = l[0] * v[0][k] + l[1] * v[1][k] + l[2] * v[2][k];
            prop_assert!((r - v[3][k]).abs() <= 1e-10);
        }
    }

    #[test]
    fn triangle_matches_linear_solve(v in prop::array::uniform4(pt2())) {
        prop_assume!(triangle_area2(&v).abs() > 0.05);
        let l = bary_triangle(h2(v[0]), h2(v[1]), h2(v[2]), h2(v[3])).unwrap().to_lambda().unwrap();
        let a = [[v[0][0], v[1][0], v[2][0]], [v[0][1], v[1][1], v[2][1]], [1.0, 1.0, 1.0]];
        let o = solve_linear(a, [v[3][0], v[3][1], 1.0]).unwrap();
        for i in 0..3 {
            prop_assert!((l[i] - o[i]).abs() <= 1e-10 * o[i].abs().max(1.0));
        }
    }

    #[test]
    fn rescaled_vertices_keep_lambda(
        v in prop::array::uniform4(pt2()),
        w in prop::array::uniform4(2f64.powi(-10)..2f64.powi(10)),
        neg in prop::array::uniform4(any::<bool>()),
    ) {
        prop_assume!(triangle_area2(&v).abs() > 0.05);
        let base = bary_triangle(h2(v[0]), h2(v[1]), h2(v[2]), h2(v[3])).unwrap().to_lambda().unwrap();
        let s: [HPoint2; 4] = std::array::from_fn(|i| {
            let k = if neg[i] { -w[i] } else { w[i] };
            HPoint2::new(v[i][0] * k, v[i][1] * k, k).unwrap()
        });
        let l = bary_triangle(s[0], s[1], s[2], s[3]).unwrap().to_lambda().unwrap();
        for i in 0..3 {
            prop_assert!((l[i] - base[i]).abs() <= 1e-10 * base[i].abs().max(1.0));
        }
    }

    #[test]
    fn inside_test_agrees_with_lambda(v in prop::array::uniform4(pt2())) {
        prop_assume!(triangle_area2(&v).abs() > 1e-3);
        let b = bary_triangle(h2(v[0]), h2(v[1]), h2(v[2]), h2(v[3])).unwrap();
        let l = b.to_lambda().unwrap();
        prop_assert_eq!(b.is_inside().unwrap(), l.iter().all(|&x| x >= 0.0));
    }

    #[test]
    fn tetrahedron_matches_linear_solve(v in prop::array::uniform5(pt3())) {
        let a = [
            [v[0][0], v[1][0], v[2][0], v[3][0]],
            [v[0][1], v[1][1], v[2][1], v[3][1]],
            [v[0][2], v[1][2], v[2][2], v[3][2]],
            [1.0, 1.0, 1.0, 1.0],
        ];
        prop_assume!(hkernel::oracle::condition_number(a) < 1e4);
        let b = bary_tetrahedron(h3(v[0]), h3(v[1]), h3(v[2]), h3(v[3]), h3(v[4])).unwrap();
        let l = b.to_lambda().unwrap();
        let o = solve_linear(a, [v[4][0], v[4][1], v[4][2], 1.0]).unwrap();
        prop_assert!((l.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        for i in 0..4 {
            prop_assert!((l[i] - o[i]).abs() <= 1e-10 * o[i].abs().max(1.0));
        }
    }

    #[test]
    fn integer_simplices_are_exact(
        t in prop::array::uniform4(int_tuple::<2>(1 << 15)),
        q in prop::array::uniform5(int_tuple::<3>(1 << 10)),
    ) {
        let p2: [[f64; 3]; 4] = t.map(|p| [p[0], p[1], 1.0]);
        if let Ok(b) = bary_triangle(h2(t[0]), h2(t[1]), h2(t[2]), h2(t[3])) {
            prop_assert!(matches_exact(MirrorOp::BaryTriangle, &[&p2[0], &p2[1], &p2[2], &p2[3]], &b.xi));
        }
        let p3: [[f64; 4]; 5] = q.map(|p| [p[0], p[1], p[2], 1.0]);
        if let Ok(b) = bary_tetrahedron(h3(q[0]), h3(q[1]), h3(q[2]), h3(q[3]), h3(q[4])) {
            prop_assert!(matches_exact(
                MirrorOp::BaryTetrahedron,
                &[&p3[0], &p3[1], &p3[2], &p3[3], &p3[4]],
                &b.xi
            ));
        }
    }
}

#[test]
fn centroid_is_exactly_one_third_in_rationals() {
    let v: Vec<_> = [[0.0, 0.0, 3.0], [3.0, 0.0, 3.0], [0.0, 3.0, 3.0]].iter().map(|p| rationals(p)).collect();
    let l = exact_barycentric(&v, &rationals(&[1.0, 1.0, 3.0])).unwrap();
    let third = hkernel::oracle::Rational::new(1.into(), 3.into());
    assert!(l.iter().all(|x| *x == third));
    assert!(!float_equals(1.0 / 3.0, &third));
}
