//! Robustness benchmark: projective pipeline vs division-based Euclidean
//! pipeline, both measured against exact rational references.
//!
//! Instances are drawn from `ChaCha8Rng::seed_from_u64(seed)`, so a given
//! scenario always produces the same CSV. Exact references are computed in
//! parallel but collected in instance order. Timing is opt-in because wall
//! time is the only non-deterministic column.

use std::fmt;
use std::io::{self, Write};
use std::time::Instant;

use hkernel::oracle::{
    cramer2, cramer3, euclid_two_planes, exact_euclidean, exact_mirror, rationals,
    relative_error, MirrorOp, Rational,
};
use hkernel::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub const HEADER: &str =
    "family,severity,method,max_relative_error_vs_exact,failure_count,wall_time_ns_per_op";

const TIMING_REPS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Family {
    /// Two lines meeting at angle `severity` (radians).
    NearParallelLines,
    /// Two planes whose normals differ by angle `severity` (radians).
    NearParallelPlanes,
    /// Triangle of height `severity` relative to its base.
    ThinTriangle,
    /// Three planes each scaled by `10^k`, `k` uniform in `[-severity, severity]`.
    ExponentSpread,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::NearParallelLines,
        Family::NearParallelPlanes,
        Family::ThinTriangle,
        Family::ExponentSpread,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::NearParallelLines => "near-parallel-lines",
            Family::NearParallelPlanes => "near-parallel-planes",
            Family::ThinTriangle => "thin-triangle",
            Family::ExponentSpread => "exponent-spread",
        }
    }

    /// Severities used when none are given.
    pub fn default_severities(self) -> &'static [f64] {
        match self {
            Family::ExponentSpread => &[10.0, 50.0, 100.0, 150.0],
            _ => &[1e-2, 1e-4, 1e-6, 1e-8, 1e-10],
        }
    }

    fn check_severity(self, s: f64) -> Result<(), String> {
        let ok = match self {
            Family::ExponentSpread => (0.0..=300.0).contains(&s),
            _ => s > 0.0 && s <= 1.0,
        };
        if ok {
            Ok(())
        } else {
            let range = match self {
                Family::ExponentSpread => "[0, 300]",
                _ => "(0, 1]",
            };
            Err(format!("severity {s} outside {range} for {}", self.name()))
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Projective,
    EuclideanOracle,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Projective => "projective",
            Method::EuclideanOracle => "euclidean-oracle",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario {
    pub family: Family,
    pub severity: f64,
    pub count: usize,
    pub seed: u64,
}

impl Scenario {
    pub fn validate(&self) -> Result<(), String> {
        if self.count == 0 {
            return Err("count must be at least 1".into());
        }
        self.family.check_severity(self.severity)
    }
}

/// One CSV data row.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub family: Family,
    pub severity: f64,
    pub method: Method,
    /// Over instances where the method produced a finite result; NaN when
    /// there were none.
    pub max_relative_error: f64,
    /// Instances with no usable result: overflow, underflow to a zero
    /// determinant, NaN, or a structured error.
    pub failures: usize,
    pub ns_per_op: Option<f64>,
}

impl Row {
    pub fn to_csv(&self) -> String {
        let time = match self.ns_per_op {
            Some(t) => format!("{t:.1}"),
            None => "-".into(),
        };
        format!(
            "{},{:e},{},{:e},{},{}",
            self.family,
            self.severity,
            self.method.name(),
            self.max_relative_error,
            self.failures,
            time
        )
    }
}

pub fn write_csv<W: Write>(rows: &[Row], mut w: W) -> io::Result<()> {
    writeln!(w, "{HEADER}")?;
    for r in rows {
        writeln!(w, "{}", r.to_csv())?;
    }
    w.flush()
}

// ---------------------------------------------------------------------------
// Instance generation

fn unit3(rng: &mut ChaCha8Rng) -> [f64; 3] {
    loop {
        let v: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 0.1 && n <= 1.0 {
            return v.map(|c| c / n);
        }
    }
}

fn gen_lines(rng: &mut ChaCha8Rng, eps: f64) -> [[f64; 3]; 2] {
    let x: [f64; 2] = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
    let theta = rng.gen_range(0.0..std::f64::consts::PI);
    [theta, theta + eps].map(|phi| {
        let (s, c) = phi.sin_cos();
        [-s, c, s * x[0] - c * x[1]]
    })
}

fn gen_planes(rng: &mut ChaCha8Rng, eps: f64) -> [[f64; 4]; 2] {
    let n1 = unit3(rng);
    let v = loop {
        let r = unit3(rng);
        let d = r[0] * n1[0] + r[1] * n1[1] + r[2] * n1[2];
        let p = [r[0] - d * n1[0], r[1] - d * n1[1], r[2] - d * n1[2]];
        let n = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
        if n > 0.1 {
            break p.map(|c| c / n);
        }
    };
    let (s, c) = eps.sin_cos();
    let n2 = [0, 1, 2].map(|i| n1[i] * c + v[i] * s);
    let x: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
    [n1, n2].map(|n| [n[0], n[1], n[2], -(n[0] * x[0] + n[1] * x[1] + n[2] * x[2])])
}

fn gen_triangle(rng: &mut ChaCha8Rng, eps: f64) -> [[f64; 3]; 4] {
    let a: [f64; 2] = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
    let ang = rng.gen_range(0.0..std::f64::consts::TAU);
    let len = rng.gen_range(0.5..2.0);
    let (s, c) = ang.sin_cos();
    let b = [a[0] + len * c, a[1] + len * s];
    let m = [(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0];
    let h = eps * len;
    let cc = [m[0] - h * s, m[1] + h * c];
    let wts: [f64; 3] = std::array::from_fn(|_| rng.gen_range(0.05..1.0));
    let total = wts[0] + wts[1] + wts[2];
    let q = [0, 1].map(|k| (wts[0] * a[k] + wts[1] * b[k] + wts[2] * cc[k]) / total);
    [a, b, cc, q].map(|p| [p[0], p[1], 1.0])
}

fn gen_spread(rng: &mut ChaCha8Rng, span: f64) -> [[f64; 4]; 3] {
    let span = span.round() as i32;
    std::array::from_fn(|_| {
        let k = rng.gen_range(-span..=span);
        let scale = 10f64.powi(k);
        std::array::from_fn(|_| rng.gen_range(-1.0..1.0) * scale)
    })
}

// ---------------------------------------------------------------------------
// Methods

/// A method returns Euclidean output coordinates, or `None` on failure.
type Output = Option<Vec<f64>>;

fn finite(v: Vec<f64>) -> Output {
    v.iter().all(|x| x.is_finite()).then_some(v)
}

fn lines_projective(l: &[[f64; 3]; 2]) -> Output {
    let p = meet_lines(HLine2::from_array(l[0]).ok()?, HLine2::from_array(l[1]).ok()?).ok()?;
    let (x, y) = to_euclidean(p).ok()?;
    finite(vec![x, y])
}

fn lines_euclidean(l: &[[f64; 3]; 2]) -> Output {
    let a = [[l[0][0], l[0][1]], [l[1][0], l[1][1]]];
    finite(cramer2(a, [-l[0][2], -l[1][2]]).ok()?.to_vec())
}

fn planes_projective(r: &[[f64; 4]; 2]) -> Output {
    let l = meet_two_planes(HPlane::from_array(r[0]).ok()?, HPlane::from_array(r[1]).ok()?).ok()?;
    finite(to_euclidean3(l.origin_point).ok()?.to_vec())
}

fn planes_euclidean(r: &[[f64; 4]; 2]) -> Output {
    let l = euclid_two_planes(HPlane::from_array(r[0]).ok()?, HPlane::from_array(r[1]).ok()?).ok()?;
    finite(l.point.to_vec())
}

fn triangle_projective(t: &[[f64; 3]; 4]) -> Output {
    let p = t.map(|c| HPoint2::from_array(c).ok());
    let b = bary_triangle(p[0]?, p[1]?, p[2]?, p[3]?).ok()?;
    finite(b.to_lambda().ok()?.to_vec())
}

fn triangle_euclidean(t: &[[f64; 3]; 4]) -> Output {
    let a = [
        [t[0][0], t[1][0], t[2][0]],
        [t[0][1], t[1][1], t[2][1]],
        [1.0, 1.0, 1.0],
    ];
    finite(cramer3(a, [t[3][0], t[3][1], 1.0]).ok()?.to_vec())
}

fn spread_projective(r: &[[f64; 4]; 3]) -> Output {
    let p = r.map(|c| HPlane::from_array(c).ok().map(HPlane::normalized));
    let x = meet_three_planes(p[0]?, p[1]?, p[2]?).ok()?.normalized();
    finite(to_euclidean3(x).ok()?.to_vec())
}

fn spread_euclidean(r: &[[f64; 4]; 3]) -> Output {
    let a = r.map(|p| [p[0], p[1], p[2]]);
    finite(cramer3(a, r.map(|p| -p[3])).ok()?.to_vec())
}

// ---------------------------------------------------------------------------
// Exact references

fn exact_point(op: MirrorOp, tuples: &[&[f64]]) -> Option<Vec<Rational>> {
    let inputs: Vec<_> = tuples.iter().map(|t| rationals(t)).collect();
    let h = exact_mirror(op, &inputs).ok()?;
    let point = if op == MirrorOp::MeetTwoPlanes { &h[..4] } else { &h[..] };
    exact_euclidean(point).ok()
}

fn exact_lambda(t: &[[f64; 3]; 4]) -> Option<Vec<Rational>> {
    let inputs: Vec<_> = t.iter().map(|p| rationals(p)).collect();
    let xi = exact_mirror(MirrorOp::BaryTriangle, &inputs).ok()?;
    let den = &xi[3];
    Some(xi[..3].iter().map(|v| -(v / den)).collect())
}

// ---------------------------------------------------------------------------
// Runner

struct Cell {
    max_err: f64,
    failures: usize,
}

fn measure<I: Sync>(
    instances: &[I],
    exact: &[Option<Vec<Rational>>],
    method: impl Fn(&I) -> Output + Sync,
) -> Cell {
    let errs: Vec<Option<f64>> = instances
        .par_iter()
        .zip(exact)
        .map(|(inst, ex)| match (method(inst), ex) {
            (Some(out), Some(ex)) => Some(relative_error(&out, ex)),
            (Some(_), None) => Some(f64::NAN),
            (None, _) => None,
        })
        .collect();
    let mut cell = Cell { max_err: f64::NAN, failures: 0 };
    for e in errs {
        match e {
            None => cell.failures += 1,
            Some(e) if e.is_nan() => {}
            Some(e) => {
                if cell.max_err.is_nan() || e > cell.max_err {
                    cell.max_err = e;
                }
            }
        }
    }
    cell
}

/// Median over repetitions of the per-instance wall time, single-threaded,
/// after one untimed warm-up pass.
fn time_per_op<I>(instances: &[I], method: impl Fn(&I) -> Output) -> f64 {
    let pass = || {
        for inst in instances {
            std::hint::black_box(method(std::hint::black_box(inst)));
        }
    };
    pass();
    let mut samples: Vec<f64> = (0..TIMING_REPS)
        .map(|_| {
            let start = Instant::now();
            pass();
            start.elapsed().as_nanos() as f64 / instances.len() as f64
        })
        .collect();
    samples.sort_by(f64::total_cmp);
    samples[TIMING_REPS / 2]
}

fn run_family<I, G, P, E>(
    sc: &Scenario,
    timing: bool,
    gen: G,
    exact: impl Fn(&I) -> Option<Vec<Rational>> + Sync,
    projective: P,
    euclidean: E,
) -> Vec<Row>
where
    I: Sync,
    G: Fn(&mut ChaCha8Rng, f64) -> I,
    P: Fn(&I) -> Output + Sync,
    E: Fn(&I) -> Output + Sync,
{
    let mut rng = ChaCha8Rng::seed_from_u64(sc.seed);
    let instances: Vec<I> = (0..sc.count).map(|_| gen(&mut rng, sc.severity)).collect();
    let refs: Vec<_> = instances.par_iter().map(&exact).collect();
    let mut rows = Vec::with_capacity(2);
    for method in [Method::Projective, Method::EuclideanOracle] {
        let f: &(dyn Fn(&I) -> Output + Sync) = match method {
            Method::Projective => &projective,
            Method::EuclideanOracle => &euclidean,
        };
        let cell = measure(&instances, &refs, f);
        rows.push(Row {
            family: sc.family,
            severity: sc.severity,
            method,
            max_relative_error: cell.max_err,
            failures: cell.failures,
            ns_per_op: timing.then(|| time_per_op(&instances, f)),
        });
    }
    rows
}

/// Runs one scenario and returns its projective and Euclidean rows.
pub fn run_scenario(sc: &Scenario, timing: bool) -> Result<Vec<Row>, String> {
    sc.validate()?;
    Ok(match sc.family {
        Family::NearParallelLines => run_family(
            sc,
            timing,
            gen_lines,
            |l| exact_point(MirrorOp::MeetLines, &[&l[0], &l[1]]),
            lines_projective,
            lines_euclidean,
        ),
        Family::NearParallelPlanes => run_family(
            sc,
            timing,
            gen_planes,
            |r| exact_point(MirrorOp::MeetTwoPlanes, &[&r[0], &r[1]]),
            planes_projective,
            planes_euclidean,
        ),
        Family::ThinTriangle => run_family(
            sc,
            timing,
            gen_triangle,
            exact_lambda,
            triangle_projective,
            triangle_euclidean,
        ),
        Family::ExponentSpread => run_family(
            sc,
            timing,
            gen_spread,
            |r| exact_point(MirrorOp::MeetThreePlanes, &[&r[0], &r[1], &r[2]]),
            spread_projective,
            spread_euclidean,
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(family: Family, severity: f64) -> Scenario {
        Scenario { family, severity, count: 200, seed: 7 }
    }

    #[test]
    fn rows_are_reproducible() {
        for f in Family::ALL {
            let s = sc(f, f.default_severities()[1]);
            let a = run_scenario(&s, false).unwrap();
            let b = run_scenario(&s, false).unwrap();
            assert_eq!(a.len(), 2);
            let text = |r: &[Row]| r.iter().map(Row::to_csv).collect::<Vec<_>>();
            assert_eq!(text(&a), text(&b));
        }
    }

    #[test]
    fn validation() {
        assert!(run_scenario(&sc(Family::NearParallelLines, 0.0), false).is_err());
        assert!(run_scenario(&sc(Family::ExponentSpread, 400.0), false).is_err());
        let mut s = sc(Family::ThinTriangle, 0.1);
        s.count = 0;
        assert!(run_scenario(&s, false).is_err());
    }

    #[test]
    fn csv_shape() {
        let rows = run_scenario(&sc(Family::NearParallelLines, 1e-3), false).unwrap();
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], HEADER);
        assert!(lines[1].starts_with("near-parallel-lines,1e-3,projective,"));
        assert!(lines[2].starts_with("near-parallel-lines,1e-3,euclidean-oracle,"));
        assert!(lines[1].ends_with(",0,-"));
    }
}
