use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

const GOLDEN: &str = include_str!("fixtures/bench_seed7.csv");

fn hkernel(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hkernel"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn golden_run(out: &Path) -> Output {
    hkernel(
        &["bench", "--family", "near-parallel-lines,thin-triangle,exponent-spread", "--severity", "0.001", "--count", "50", "--seed", "7", "--out", out.to_str().unwrap()],
        "",
    )
}

#[test]
fn eval_reads_stdin_and_writes_stdout() {
    let out = hkernel(&["eval", "--euclidean"], "{\"id\":1,\"op\":\"meet_lines\",\"args\":[[1,0,-1],[0,1,-2]]}\n");
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["euclidean"], serde_json::json!([1, 2]));
}

#[test]
fn eval_file_arguments() {
    let dir = tempfile::tempdir().unwrap();
    let (input, output) = (dir.path().join("in.jsonl"), dir.path().join("out.jsonl"));
    fs::write(&input, "{\"id\":\"a\",\"op\":\"cross3\",\"args\":[[1,0,0],[0,1,0]]}\nbroken\n").unwrap();
    let out = hkernel(&["eval", "--in", input.to_str().unwrap(), "--out", output.to_str().unwrap()], "");
    assert!(out.status.success());
    let text = fs::read_to_string(&output).unwrap();
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines[0], r#"{"id":"a","result":[0,0,1]}"#);
    assert!(lines[1].contains("ParseError"));
}

#[test]
fn bench_matches_golden_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b.csv");
    assert!(golden_run(&path).status.success());
    assert_eq!(fs::read_to_string(&path).unwrap(), GOLDEN);
}

#[test]
fn bench_is_byte_identical_across_runs() {
    let out = |seed: &str| {
        hkernel(&["bench", "--family", "near-parallel-planes", "--count", "20", "--seed", seed], "").stdout
    };
    assert_eq!(out("3"), out("3"));
    assert_ne!(out("3"), out("4"));
}

#[test]
fn bench_header_is_stable() {
    let out = hkernel(&["bench", "--family", "near-parallel-lines", "--severity", "1e-3", "--count", "1"], "");
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text.lines().next().unwrap(),
        "family,severity,method,max_relative_error_vs_exact,failure_count,wall_time_ns_per_op"
    );
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn exit_codes() {
    assert!(hkernel(&["--help"], "").status.success());
    assert_eq!(hkernel(&["frobnicate"], "").status.code(), Some(1));
    assert_eq!(hkernel(&["bench", "--family", "thin-triangle", "--severity", "2"], "").status.code(), Some(1));
    assert_eq!(hkernel(&["bench", "--family", "thin-triangle", "--count", "0"], "").status.code(), Some(1));
    assert_eq!(hkernel(&["eval", "--in", "/nonexistent/x.jsonl"], "").status.code(), Some(1));
}

#[test]
fn selftest_passes() {
    let out = hkernel(&["selftest"], "");
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(out.status.success(), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 8);
}
