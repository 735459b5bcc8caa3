//! End-to-end tests of the binary: command wiring, exit codes, canonical
//! output stability, and JSON round trips.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn genmat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_genmat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = genmat(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn stderr_and_code(args: &[&str]) -> (String, i32) {
    let out = genmat(args);
    (
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().expect("exit code"),
    )
}

fn temp_path(name: &str) -> std::path::PathBuf {
    std::env::temp_dir().join(format!("genmat-cli-test-{}-{name}", std::process::id()))
}

#[test]
fn normalize_expands_products() {
    assert_eq!(stdout_of(&["normalize", "x*y"]).trim(), "1/2*v + (1/2)·[x,y]");
}

#[test]
fn normalize_output_is_canonical() {
    let first = stdout_of(&["normalize", "x*y - y*x + t*x"]);
    let second = stdout_of(&["normalize", first.trim()]);
    assert_eq!(first, second);
}

#[test]
fn stdin_is_accepted_with_a_dash() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_genmat"))
        .args(["normalize", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(b"2*x - x")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "x");
}

#[test]
fn syntax_errors_exit_with_code_1() {
    let (stderr, code) = stderr_and_code(&["normalize", "[x]"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("at least two arguments"), "{stderr}");

    let (stderr, code) = stderr_and_code(&["normalize", "x + q"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("unknown symbol"), "{stderr}");
}

#[test]
fn usage_errors_from_clap_exit_with_code_1() {
    let (_, code) = stderr_and_code(&["no-such-command"]);
    assert_eq!(code, 1);
}

#[test]
fn non_members_exit_with_code_2() {
    let (stderr, code) = stderr_and_code(&["lie-check", "t*x"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("not a Lie element"), "{stderr}");
}

#[test]
fn members_decompose() {
    let out = stdout_of(&["lie-check", "x + v*x - t*y"]);
    assert!(out.contains("alpha = 1"), "{out}");
    assert!(out.contains("a     = 1"), "{out}");
}

#[test]
fn lie_form_round_trips_through_normalize() {
    let expr = "[x,y,y] - 2*[x,y] + 3*x";
    let form = stdout_of(&["lie-form", expr]);
    let direct = stdout_of(&["normalize", expr]);
    let reparsed = stdout_of(&["normalize", form.trim()]);
    assert_eq!(direct, reparsed);
}

#[test]
fn exp_of_zero_is_the_identity() {
    let out = stdout_of(&["exp", "0", "--order", "6"]);
    assert!(out.contains("[ 1 | 0 | 0 ]"), "{out}");
    assert!(out.contains("[ 0 | 1 | 0 ]"), "{out}");
    assert!(out.contains("[ 0 | 0 | 1 ]"), "{out}");
}

#[test]
fn exp_and_log_round_trip_through_json() {
    let path = temp_path("exp.json");
    let json = stdout_of(&["exp", "[x,y]", "--order", "6", "--format", "json"]);
    std::fs::write(&path, json).unwrap();
    let out = stdout_of(&["log", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert!(out.contains("a = 0"), "{out}");
    assert!(out.contains("b = 0"), "{out}");
    assert!(out.contains("c = 1"), "{out}");
}

#[test]
fn tampered_exponentials_exit_with_code_3() {
    let path = temp_path("tampered.json");
    let json = stdout_of(&["exp", "x", "--order", "6", "--format", "json"]);
    let mut value: serde_json::Value = serde_json::from_str(&json).unwrap();
    // Add a stray term to entry (0,1) so the redundant entries disagree.
    value["entries"][0][1]["terms"]
        .as_array_mut()
        .unwrap()
        .push(serde_json::json!({"num": "7", "den": "1", "exp": [1, 0, 0]}));
    std::fs::write(&path, serde_json::to_string(&value).unwrap()).unwrap();
    let (stderr, code) = stderr_and_code(&["log", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code, 3);
    assert!(stderr.contains("inconsistent"), "{stderr}");
}

#[test]
fn compose_prints_the_series_head() {
    let out = stdout_of(&["compose", "x", "y", "--order", "4"]);
    assert!(
        out.contains("element: (1 + 1/6*u - 1/6*v)·x + (1 + 1/6*t - 1/6*v)·y + (1/2 - 1/12*v)·[x,y]"),
        "{out}"
    );
    assert!(out.contains("lie form: x + y + 1/2·[x,y]"), "{out}");
}

#[test]
fn bch_projection_agrees_with_compose() {
    let bch: serde_json::Value =
        serde_json::from_str(&stdout_of(&["bch", "--order", "5", "--format", "json"])).unwrap();
    let composed: serde_json::Value =
        serde_json::from_str(&stdout_of(&["compose", "x", "y", "--order", "5", "--format", "json"]))
            .unwrap();
    assert_eq!(bch["projection"], composed["element"]);
}

#[test]
fn class_reduction_truncates() {
    let full = stdout_of(&["normalize", "x*y*x"]);
    assert!(full.contains("x"), "{full}");
    let reduced = stdout_of(&["normalize", "x*y*x", "--class", "2"]);
    assert_eq!(reduced.trim(), "0");
}

#[test]
fn class_is_rejected_where_it_does_not_apply() {
    let (stderr, code) = stderr_and_code(&["lie-check", "x", "--class", "3"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("--class"), "{stderr}");
}

#[test]
fn g3_exponential_recovery_round_trips() {
    let path = temp_path("g3.json");
    let json = stdout_of(&[
        "g3", "exp", "s1", "s2 - s3", "s3^2", "--order", "5", "--format", "json",
    ]);
    std::fs::write(&path, json).unwrap();
    let out = stdout_of(&["g3", "recover", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert!(out.contains("x1 = s1"), "{out}");
    assert!(out.contains("x2 = s2 - s3"), "{out}");
    assert!(out.contains("x3 = s3^2"), "{out}");
}

#[test]
fn g3_composition_has_the_linear_head() {
    let out = stdout_of(&["g3", "compose", "s1", "s2", "s3", "s4", "s5", "s6", "--order", "3"]);
    assert!(out.contains("x1 = s1 + s4"), "{out}");
    assert!(out.contains("x2 = s2 + s5"), "{out}");
    assert!(out.contains("x3 = s3 + s6"), "{out}");
}

#[test]
fn verify_reports_every_check() {
    let json: serde_json::Value =
        serde_json::from_str(&stdout_of(&["verify", "--seed", "3", "--format", "json"])).unwrap();
    assert_eq!(json["all_pass"], serde_json::Value::Bool(true));
    assert_eq!(json["checks"].as_array().unwrap().len(), 10);
}
