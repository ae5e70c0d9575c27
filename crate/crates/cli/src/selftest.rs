//! A quick invariant sweep over random instances, runnable from the binary.

use hkernel::oracle::{euclid_two_planes, exact_mirror, float_equals, rationals, MirrorOp};
use hkernel::xprod::{cross3_matrix, cross4_matrix, cross5_matrix, dot};
use hkernel::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Check {
    pub name: &'static str,
    pub passed: bool,
}

const N: usize = 2000;

type Sweep = fn(&mut ChaCha8Rng) -> bool;

fn ints<const K: usize>(rng: &mut ChaCha8Rng, bound: i64) -> [f64; K] {
    std::array::from_fn(|_| rng.gen_range(-bound..=bound) as f64)
}

fn floats<const K: usize>(rng: &mut ChaCha8Rng) -> [f64; K] {
    std::array::from_fn(|_| rng.gen_range(-1.0..1.0))
}

fn exact_matches(op: MirrorOp, inputs: &[&[f64]], out: &[f64]) -> bool {
    let q: Vec<_> = inputs.iter().map(|t| rationals(t)).collect();
    match exact_mirror(op, &q) {
        Ok(r) => r.len() == out.len() && out.iter().zip(&r).all(|(x, r)| float_equals(*x, r)),
        Err(_) => false,
    }
}

fn integer_exactness(rng: &mut ChaCha8Rng) -> bool {
    (0..N).all(|_| {
        let (a, b, c) = (ints::<4>(rng, 1 << 15), ints::<4>(rng, 1 << 15), ints::<4>(rng, 1 << 15));
        let (u, v) = (ints::<3>(rng, 1 << 15), ints::<3>(rng, 1 << 15));
        let d: [[f64; 5]; 4] = std::array::from_fn(|_| ints(rng, 1 << 10));
        exact_matches(MirrorOp::Cross3, &[&u, &v], &cross3(&u, &v))
            && exact_matches(MirrorOp::Cross4, &[&a, &b, &c], &cross4(&a, &b, &c))
            && exact_matches(
                MirrorOp::Cross5,
                &[&d[0], &d[1], &d[2], &d[3]],
                &cross5(&d[0], &d[1], &d[2], &d[3]),
            )
    })
}

fn form_equivalence(rng: &mut ChaCha8Rng) -> bool {
    (0..N).all(|_| {
        let (u, v) = (floats::<3>(rng), floats::<3>(rng));
        let (a, b, c) = (floats::<4>(rng), floats::<4>(rng), floats::<4>(rng));
        let d: [[f64; 5]; 4] = std::array::from_fn(|_| floats(rng));
        let eq = |x: &[f64], y: &[f64]| x.iter().zip(y).all(|(p, q)| p == q);
        eq(&cross3(&u, &v), &cross3_matrix(&u, &v))
            && eq(&cross4(&a, &b, &c), &cross4_matrix(&a, &b, &c))
            && eq(
                &cross5(&d[0], &d[1], &d[2], &d[3]),
                &cross5_matrix(&d[0], &d[1], &d[2], &d[3]),
            )
    })
}

fn duality(rng: &mut ChaCha8Rng) -> bool {
    (0..N).all(|_| {
        let (u, v) = (floats::<3>(rng), floats::<3>(rng));
        match (HLine2::from_array(u), HLine2::from_array(v), HPoint2::from_array(u), HPoint2::from_array(v)) {
            (Ok(l1), Ok(l2), Ok(p1), Ok(p2)) => {
                let m = meet_lines(l1, l2).map(|x| x.to_array());
                let j = join_points(p1, p2).map(|x| x.to_array());
                m == j
            }
            _ => true,
        }
    })
}

fn incidence(rng: &mut ChaCha8Rng) -> bool {
    (0..N).all(|_| {
        let (a, b, c) = (floats::<4>(rng), floats::<4>(rng), floats::<4>(rng));
        let (Ok(p), Ok(q), Ok(r)) = (HPoint3::from_array(a), HPoint3::from_array(b), HPoint3::from_array(c))
        else {
            return true;
        };
        let Ok(plane) = plane_from_points(p, q, r) else { return true };
        let scale = 1e-12 * [a, b, c].iter().map(|t| t.iter().fold(0.0f64, |m, v| m.max(v.abs()))).product::<f64>();
        [a, b, c].iter().all(|g| dot(plane.as_array(), g).abs() <= scale * 2.0)
    })
}

fn grassmann_plucker(rng: &mut ChaCha8Rng) -> bool {
    (0..N).all(|_| {
        // Products of 2x2 minors stay below 2^53 for entries up to 2^12, so
        // the relation itself evaluates exactly.
        let (a, b) = (ints::<4>(rng, 1 << 12), ints::<4>(rng, 1 << 12));
        match (HPoint3::from_array(a), HPoint3::from_array(b)) {
            (Ok(p), Ok(q)) => line_from_points_3d(p, q).map_or(true, |l| l.grassmann_plucker() == 0.0),
            _ => true,
        }
    })
}

fn barycentric(rng: &mut ChaCha8Rng) -> bool {
    (0..N).all(|_| {
        let v: [[f64; 2]; 4] = std::array::from_fn(|_| floats(rng));
        let p = v.map(|c| from_euclidean(c[0], c[1]));
        let Ok(b) = bary_triangle(p[0], p[1], p[2], p[3]) else { return true };
        let Ok(l) = b.to_lambda() else { return true };
        // Skip badly conditioned slivers; the sweep checks the formula.
        if b.xi[3].abs() < 1e-3 {
            return true;
        }
        let recon = [0, 1].map(|k| l[0] * v[0][k] + l[1] * v[1][k] + l[2] * v[2][k]);
        (l.iter().sum::<f64>() - 1.0).abs() <= 1e-12
            && (0..2).all(|k| (recon[k] - v[3][k]).abs() <= 1e-10)
    })
}

fn interpolation(rng: &mut ChaCha8Rng) -> bool {
    (0..N).all(|_| {
        let mut a = floats::<4>(rng);
        let mut b = floats::<4>(rng);
        a[3] = rng.gen_range(0.5..2.0);
        b[3] = rng.gen_range(0.5..2.0);
        let (p, q) = (HPoint3::from_array(a).unwrap(), HPoint3::from_array(b).unwrap());
        let s = HSegment::new(p, q).unwrap();
        lerp_monotonic(&s, 0.0).map(|x| x.to_array()) == Ok(a)
            && lerp_monotonic(&s, 1.0).map(|x| x.to_array()) == Ok(b)
            && lerp_rational(&s, 0.0).is_ok_and(|x| projectively_equal(x.as_array(), &a, 1e-15) == Ok(true))
    })
}

fn two_planes(rng: &mut ChaCha8Rng) -> bool {
    (0..N).all(|_| {
        let (Ok(r1), Ok(r2)) = (HPlane::from_array(floats(rng)), HPlane::from_array(floats(rng))) else {
            return true;
        };
        let (Ok(l), Ok(e)) = (meet_two_planes(r1, r2), euclid_two_planes(r1, r2)) else { return true };
        let Ok(x) = to_euclidean3(l.origin_point) else { return true };
        let s = l.direction;
        let ss = dot(&s, &s);
        if ss < 1e-6 {
            return true;
        }
        // Difference from the oracle point must be parallel to s.
        let d = [0, 1, 2].map(|i| x[i] - e.point[i]);
        let c = hkernel::xprod::cross3(&d, &s);
        let scale = x.iter().chain(&e.point).fold(1.0f64, |m, v| m.max(v.abs())) * ss.sqrt();
        c.iter().all(|v| v.abs() <= 1e-10 * scale)
    })
}

/// Runs every check with a fixed seed.
pub fn run() -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e1f_7e57);
    let suite: [(&'static str, Sweep); 8] = [
        ("integer exactness against exact mirror", integer_exactness),
        ("cofactor and matrix forms agree bitwise", form_equivalence),
        ("meet_lines and join_points coincide", duality),
        ("plane through three points contains them", incidence),
        ("Grassmann-Plucker relation on integer lines", grassmann_plucker),
        ("barycentric partition and reconstruction", barycentric),
        ("interpolation endpoints", interpolation),
        ("two-plane line agrees with closed form", two_planes),
    ];
    suite
        .into_iter()
        .map(|(name, f)| Check { name, passed: f(&mut rng) })
        .collect()
}
