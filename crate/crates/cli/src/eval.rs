//! Line-delimited JSON evaluation of kernel operations.
//!
//! Each input line is `{"id": ..., "op": "...", "args": [[...], ...]}`. Each
//! output line echoes the id with either `"result"` or `"error"`. A bad
//! line produces an error record and processing continues.

use std::io::{self, BufRead, Write};

use hkernel::batch::{self, Exec};
use hkernel::hcoords::euclidean_coords;
use hkernel::xprod::{cross3_matrix, cross4_matrix, cross5_matrix};
use hkernel::*;
use serde::Deserialize;
use serde_json::{json, Map, Number, Value};

/// Every operation name accepted by `eval`.
pub const OPS: &[&str] = &[
    "cross3",
    "cross3_matrix",
    "cross4",
    "cross4_matrix",
    "cross5",
    "cross5_matrix",
    "meet_lines",
    "join_points",
    "plane_from_points",
    "meet_three_planes",
    "meet_two_planes",
    "line_from_points_3d",
    "bary_triangle",
    "bary_tetrahedron",
    "bary_to_euclidean",
    "lerp_rational",
    "lerp_monotonic",
    "to_euclidean",
    "canonicalize",
    "normalize_exponents",
    "projectively_equal",
];

#[derive(Debug, Deserialize)]
struct Record {
    #[serde(default)]
    id: Value,
    op: String,
    args: Vec<Vec<f64>>,
}

#[derive(Debug)]
enum Failure {
    Kernel(KernelError),
    UnknownOp,
}

impl From<KernelError> for Failure {
    fn from(e: KernelError) -> Self {
        Failure::Kernel(e)
    }
}

impl Failure {
    fn code(&self) -> &'static str {
        match self {
            Failure::Kernel(e) => e.code(),
            Failure::UnknownOp => "UnknownOp",
        }
    }
}

struct Answer {
    result: Value,
    extra: Vec<(&'static str, Value)>,
    euclidean: Option<Value>,
}

impl Answer {
    fn tuple(t: &[f64]) -> Self {
        Answer { result: nums(t), extra: Vec::new(), euclidean: None }
    }

    fn point<const N: usize, const M: usize>(t: &[f64; N]) -> Self {
        let e = euclidean_coords::<N, M>(t).map_or(Value::Null, |c| nums(&c));
        Answer { result: nums(t), extra: Vec::new(), euclidean: Some(e) }
    }
}

/// Integral values print without a fractional part; everything else uses
/// the shortest decimal that parses back to the same double. `-0.0` keeps
/// its sign.
pub fn num(v: f64) -> Value {
    if v.fract() == 0.0 && v.abs() < 9_007_199_254_740_992.0 && !(v == 0.0 && v.is_sign_negative()) {
        Value::from(v as i64)
    } else {
        Number::from_f64(v).map(Value::Number).unwrap_or(Value::Null)
    }
}

fn nums(t: &[f64]) -> Value {
    Value::Array(t.iter().map(|&v| num(v)).collect())
}

type Args<'a> = &'a [Vec<f64>];

fn arity(args: Args, count: usize) -> Result<(), Failure> {
    if args.len() != count {
        return Err(KernelError::ArityMismatch.into());
    }
    Ok(())
}

fn tup<const N: usize>(args: Args, i: usize) -> Result<[f64; N], Failure> {
    args.get(i)
        .and_then(|a| <[f64; N]>::try_from(a.as_slice()).ok())
        .ok_or(Failure::Kernel(KernelError::ArityMismatch))
}

fn p2(args: Args, i: usize) -> Result<HPoint2, Failure> {
    Ok(HPoint2::from_array(tup(args, i)?)?)
}
fn p3(args: Args, i: usize) -> Result<HPoint3, Failure> {
    Ok(HPoint3::from_array(tup(args, i)?)?)
}
fn plane(args: Args, i: usize) -> Result<HPlane, Failure> {
    Ok(HPlane::from_array(tup(args, i)?)?)
}
fn line(args: Args, i: usize) -> Result<HLine2, Failure> {
    Ok(HLine2::from_array(tup(args, i)?)?)
}

fn scalar(args: Args, i: usize) -> Result<f64, Failure> {
    Ok(tup::<1>(args, i)?[0])
}

fn lerp(args: Args, monotonic: bool) -> Result<Answer, Failure> {
    arity(args, 3)?;
    let t = scalar(args, 2)?;
    match args[0].len() {
        3 => {
            let s = HSegment::new(p2(args, 0)?, p2(args, 1)?)?;
            let p = if monotonic { lerp_monotonic(&s, t)? } else { lerp_rational(&s, t)? };
            Ok(Answer::point::<3, 2>(p.as_array()))
        }
        4 => {
            let s = HSegment::new(p3(args, 0)?, p3(args, 1)?)?;
            let p = if monotonic { lerp_monotonic(&s, t)? } else { lerp_rational(&s, t)? };
            Ok(Answer::point::<4, 3>(p.as_array()))
        }
        _ => Err(KernelError::ArityMismatch.into()),
    }
}

fn per_len<F3, F4>(args: Args, f3: F3, f4: F4) -> Result<Answer, Failure>
where
    F3: FnOnce([f64; 3]) -> Result<Answer, Failure>,
    F4: FnOnce([f64; 4]) -> Result<Answer, Failure>,
{
    arity(args, 1)?;
    match args[0].len() {
        3 => f3(tup(args, 0)?),
        4 => f4(tup(args, 0)?),
        _ => Err(KernelError::ArityMismatch.into()),
    }
}

fn normalized<const N: usize>(t: [f64; N]) -> Result<Answer, Failure> {
    let s = normalize_exponents(t)?;
    let mut a = Answer::tuple(&s.tuple);
    a.extra.push(("exp2", Value::from(s.exp2)));
    Ok(a)
}

fn dispatch(op: &str, args: Args) -> Result<Answer, Failure> {
    let a = match op {
        "cross3" | "cross3_matrix" => {
            arity(args, 2)?;
            let (u, v) = (tup(args, 0)?, tup(args, 1)?);
            let f = if op == "cross3" { cross3 } else { cross3_matrix };
            Answer::tuple(&f(&u, &v))
        }
        "cross4" | "cross4_matrix" => {
            arity(args, 3)?;
            let (u, v, w) = (tup(args, 0)?, tup(args, 1)?, tup(args, 2)?);
            let f = if op == "cross4" { cross4 } else { cross4_matrix };
            Answer::tuple(&f(&u, &v, &w))
        }
        "cross5" | "cross5_matrix" => {
            arity(args, 4)?;
            let r: [[f64; 5]; 4] = [tup(args, 0)?, tup(args, 1)?, tup(args, 2)?, tup(args, 3)?];
            let f = if op == "cross5" { cross5 } else { cross5_matrix };
            Answer::tuple(&f(&r[0], &r[1], &r[2], &r[3]))
        }
        "meet_lines" => {
            arity(args, 2)?;
            Answer::point::<3, 2>(meet_lines(line(args, 0)?, line(args, 1)?)?.as_array())
        }
        "join_points" => {
            arity(args, 2)?;
            Answer::tuple(join_points(p2(args, 0)?, p2(args, 1)?)?.as_array())
        }
        "plane_from_points" => {
            arity(args, 3)?;
            Answer::tuple(plane_from_points(p3(args, 0)?, p3(args, 1)?, p3(args, 2)?)?.as_array())
        }
        "meet_three_planes" => {
            arity(args, 3)?;
            Answer::point::<4, 3>(meet_three_planes(plane(args, 0)?, plane(args, 1)?, plane(args, 2)?)?.as_array())
        }
        "meet_two_planes" => {
            arity(args, 2)?;
            let l = meet_two_planes(plane(args, 0)?, plane(args, 1)?)?;
            let mut a = Answer::point::<4, 3>(l.origin_point.as_array());
            a.extra.push(("direction", nums(&l.direction)));
            a
        }
        "line_from_points_3d" => {
            arity(args, 2)?;
            Answer::tuple(&line_from_points_3d(p3(args, 0)?, p3(args, 1)?)?.to_array())
        }
        "bary_triangle" => {
            arity(args, 4)?;
            let b = bary_triangle(p2(args, 0)?, p2(args, 1)?, p2(args, 2)?, p2(args, 3)?)?;
            let mut a = Answer::tuple(&b.xi);
            a.euclidean = Some(b.to_lambda().map(|l| nums(&l)).unwrap_or(Value::Null));
            a
        }
        "bary_tetrahedron" => {
            arity(args, 5)?;
            let b = bary_tetrahedron(p3(args, 0)?, p3(args, 1)?, p3(args, 2)?, p3(args, 3)?, p3(args, 4)?)?;
            let mut a = Answer::tuple(&b.xi);
            a.euclidean = Some(b.to_lambda().map(|l| nums(&l)).unwrap_or(Value::Null));
            a
        }
        "bary_to_euclidean" => {
            arity(args, 1)?;
            match args[0].len() {
                4 => Answer::tuple(&bary_to_euclidean(&ProjBary3::from_xi(tup(args, 0)?))?),
                5 => Answer::tuple(&bary_to_euclidean(&ProjBary4::from_xi(tup(args, 0)?))?),
                _ => return Err(KernelError::ArityMismatch.into()),
            }
        }
        "lerp_rational" => lerp(args, false)?,
        "lerp_monotonic" => lerp(args, true)?,
        "to_euclidean" => per_len(
            args,
            |t| Ok(Answer::tuple(&euclidean_coords::<3, 2>(&t)?)),
            |t| Ok(Answer::tuple(&euclidean_coords::<4, 3>(&t)?)),
        )?,
        "canonicalize" => per_len(
            args,
            |t| Ok(Answer::tuple(&canonicalize(t)?)),
            |t| Ok(Answer::tuple(&canonicalize(t)?)),
        )?,
        "normalize_exponents" => per_len(args, normalized, normalized)?,
        "projectively_equal" => {
            let tol = match args.len() {
                2 => 0.0,
                3 => scalar(args, 2)?,
                _ => return Err(KernelError::ArityMismatch.into()),
            };
            let eq = projectively_equal(&args[0], &args[1], tol)?;
            Answer { result: Value::Bool(eq), extra: Vec::new(), euclidean: None }
        }
        _ => return Err(Failure::UnknownOp),
    };
    Ok(a)
}

/// Evaluates one input line (1-based `line_no`) to one output JSON object.
pub fn eval_line(line: &str, line_no: usize, euclidean: bool) -> Value {
    let rec: Record = match serde_json::from_str(line) {
        Ok(r) => r,
        Err(e) => {
            let mut m = Map::new();
            // Keep the id when the line is valid JSON with a bad shape.
            if let Some(id) = serde_json::from_str::<Value>(line).ok().and_then(|v| v.get("id").cloned()) {
                m.insert("id".into(), id);
            }
            m.insert("line".into(), Value::from(line_no));
            m.insert("error".into(), Value::from("ParseError"));
            m.insert("message".into(), Value::from(e.to_string()));
            return Value::Object(m);
        }
    };
    let mut m = Map::new();
    m.insert("id".into(), rec.id);
    match dispatch(&rec.op, &rec.args) {
        Ok(a) => {
            m.insert("result".into(), a.result);
            for (k, v) in a.extra {
                m.insert(k.into(), v);
            }
            if euclidean {
                if let Some(e) = a.euclidean {
                    m.insert("euclidean".into(), e);
                }
            }
        }
        Err(f) => {
            m.insert("error".into(), json!(f.code()));
        }
    }
    Value::Object(m)
}

/// Counts reported after a batch run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Summary {
    pub records: usize,
    pub errors: usize,
}

const CHUNK: usize = 8192;

/// Streams records from `input` to `out`. Records in a chunk are evaluated
/// in parallel under `exec`; output order always matches input order.
pub fn run_batch<R: BufRead, W: Write>(
    input: R,
    mut out: W,
    euclidean: bool,
    exec: Exec,
) -> io::Result<Summary> {
    let mut summary = Summary::default();
    let mut pending: Vec<(usize, String)> = Vec::with_capacity(CHUNK);
    let mut flush = |pending: &mut Vec<(usize, String)>, out: &mut W| -> io::Result<()> {
        let results = batch::map(exec, pending, |(n, l)| eval_line(l, *n, euclidean));
        for v in results {
            summary.records += 1;
            if v.get("error").is_some() {
                summary.errors += 1;
            }
            serde_json::to_writer(&mut *out, &v)?;
            out.write_all(b"\n")?;
        }
        pending.clear();
        Ok(())
    };
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        pending.push((i + 1, line));
        if pending.len() == CHUNK {
            flush(&mut pending, &mut out)?;
        }
    }
    flush(&mut pending, &mut out)?;
    out.flush()?;
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn floats(v: &Value) -> Vec<f64> {
        v.as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect()
    }

    fn eval(s: &str) -> String {
        eval_line(s, 1, false).to_string()
    }

    #[test]
    fn examples() {
        let v = eval_line(r#"{"id":"1","op":"meet_lines","args":[[0,1,0],[1,0,0]]}"#, 1, false);
        assert_eq!(v["id"], "1");
        assert_eq!(floats(&v["result"]), vec![0.0, 0.0, -1.0]);
        assert_eq!(
            eval(r#"{"id":"2","op":"meet_lines","args":[[1,0,0],[1,0,0]]}"#),
            r#"{"id":"2","error":"DegenerateInput"}"#
        );
    }

    #[test]
    fn numbers_round_trip() {
        assert_eq!(num(-0.0).to_string(), "-0.0");
        assert_eq!(num(3.0).to_string(), "3");
        assert_eq!(num(0.1).to_string(), "0.1");
        assert_eq!(num(1e300).to_string(), "1e+300");
        let v: f64 = serde_json::from_str(&num(1.0 / 3.0).to_string()).unwrap();
        assert_eq!(v, 1.0 / 3.0);
    }

    #[test]
    fn extras_and_flags() {
        let v = eval_line(
            r#"{"id":7,"op":"meet_two_planes","args":[[0,0,1,0],[0,1,0,0]]}"#,
            1,
            true,
        );
        assert_eq!(floats(&v["direction"]), vec![-1.0, 0.0, 0.0]);
        assert_eq!(floats(&v["euclidean"]), vec![0.0, 0.0, 0.0]);

        let v = eval_line(r#"{"id":"n","op":"normalize_exponents","args":[[4,0,1]]}"#, 1, false);
        assert_eq!(v["result"], json!([1, 0, 0.25]));
        assert_eq!(v["exp2"], json!(2));

        let v = eval_line(
            r#"{"id":"p","op":"projectively_equal","args":[[1,2,3],[-2,-4,-6]]}"#,
            1,
            false,
        );
        assert_eq!(v["result"], json!(true));

        let v = eval_line(r#"{"id":"i","op":"meet_lines","args":[[1,0,0],[1,0,-1]]}"#, 1, true);
        assert_eq!(v["euclidean"], Value::Null);
    }

    #[test]
    fn bad_records() {
        let v = eval_line("{not json", 4, false);
        assert_eq!(v["error"], "ParseError");
        assert_eq!(v["line"], 4);
        let v = eval_line(r#"{"id":"x","op":"meet_lines","args":"nope"}"#, 5, false);
        assert_eq!(v["id"], "x");
        assert_eq!(v["error"], "ParseError");
        let v = eval_line(r#"{"id":"x","op":"frobnicate","args":[]}"#, 6, false);
        assert_eq!(v["error"], "UnknownOp");
        let v = eval_line(r#"{"id":"x","op":"meet_lines","args":[[1,0]]}"#, 6, false);
        assert_eq!(v["error"], "ArityMismatch");
    }

    #[test]
    fn every_listed_op_dispatches() {
        for op in OPS {
            let v = eval_line(&format!(r#"{{"id":0,"op":"{op}","args":[]}}"#), 1, false);
            assert_ne!(v["error"], "UnknownOp", "{op}");
        }
    }
}
