use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_su2plane")).args(args).output().expect("binary runs")
}

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_su2plane"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

const SPIN_HALF: &str = r#"{"sector":"half","j_max":"1/2","coeffs":[
    {"two_j":1,"two_m":-1,"re":0.5,"im":0.25},
    {"two_j":1,"two_m":1,"re":-1.0,"im":0.0}]}"#;

fn coeffs(json: &str) -> Vec<(i64, i64, f64, f64)> {
    let v: serde_json::Value = serde_json::from_str(json).unwrap();
    v["coeffs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| {
            (
                c["two_j"].as_i64().unwrap(),
                c["two_m"].as_i64().unwrap(),
                c["re"].as_f64().unwrap(),
                c["im"].as_f64().unwrap(),
            )
        })
        .collect()
}

#[test]
fn laguerre_table_has_a_single_row() {
    let o = run(&["eval", "--what", "laguerre", "--n", "1", "--alpha", "2", "--y-min", "1", "--y-max", "1", "--y-steps", "1"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 1);
    let value: f64 = rows[0].split(',').nth(1).unwrap().parse().unwrap();
    assert_eq!(value, 2.0);
}

#[test]
fn radial_function_vanishes_at_its_node() {
    // (1 - y) e^(-y/2) at y = 1
    let o = run(&["eval", "--what", "calL", "--two-j", "2", "--two-m", "0", "--y-min", "1", "--y-max", "1", "--y-steps", "1", "--format", "json"]);
    assert!(o.status.success());
    let rows: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rows[0]["value"].as_f64().unwrap(), 0.0);
}

#[test]
fn plane_table_is_row_major_over_y_then_phi() {
    let o = run(&["eval", "--what", "calZ", "--two-j", "1", "--two-m", "-1", "--y-min", "0", "--y-max", "2", "--y-steps", "3", "--phi-steps", "4"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let rows: Vec<Vec<f64>> =
        out.lines().skip(1).map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 12);
    assert_eq!(rows[0][0], 0.0);
    assert_eq!(rows[4][0], 1.0);
    assert!(rows.windows(2).take(3).all(|w| w[0][1] < w[1][1]));
}

#[test]
fn usage_errors_exit_with_two_and_one_line() {
    for args in [
        vec!["eval", "--what", "calL"],
        vec!["eval"],
        vec!["eval", "--what", "calL", "--two-j", "1", "--two-m", "0"],
        vec!["eval", "--what", "laguerre", "--n", "1", "--alpha", "-3"],
        vec!["verify", "--suite", "nope"],
        vec!["verify", "--j-max", "3/4"],
        vec!["verify", "--tol", "no.such.check=1"],
        vec!["rotate", "--euler", "1,2"],
        vec!["quadrature", "--n", "0", "--alpha", "0"],
        vec!["frobnicate"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert_eq!(stderr(&o).lines().count(), 1, "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn algebra_suite_passes_at_small_j() {
    let o = run(&["verify", "--suite", "algebra", "--j-max", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().last().unwrap() == "overall pass");
    assert!(!out.contains("FAIL"));
}

#[test]
fn laguerre_suite_reports_the_misprinted_composed_recurrence() {
    let o = run(&["verify", "--suite", "laguerre", "--j-max", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let line = out.lines().position(|l| l.contains("laguerre.composed.lower-degree-raise-order-two.printed")).unwrap();
    assert!(out.lines().nth(line + 1).unwrap().trim_start().starts_with("erratum:"));
}

#[test]
fn everything_passes_at_j_zero() {
    let o = run(&["verify", "--suite", "all", "--j-max", "0"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn tightened_threshold_fails_with_one() {
    let o = run(&["verify", "--suite", "laguerre", "--j-max", "2", "--tol", "laguerre.derivative=0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL laguerre.derivative"));
}

#[test]
fn json_report_has_the_documented_shape() {
    let o = run(&["verify", "--suite", "basis", "--j-max", "2", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["suite"], "basis");
    assert_eq!(v["overall"], "pass");
    let checks = v["checks"].as_array().unwrap();
    let ids: Vec<&str> = checks.iter().map(|c| c["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    for c in checks {
        for key in ["id", "reference", "max_residual", "threshold", "passed"] {
            assert!(c.get(key).is_some(), "{key} missing");
        }
    }
    assert!(checks.iter().any(|c| c.get("erratum").is_some()));
}

#[test]
fn reports_are_deterministic() {
    let args = ["verify", "--suite", "transform", "--j-max", "2", "--seed", "5"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn identity_rotation_returns_the_input() {
    let o = run_with_stdin(&["rotate", "--euler", "0,0,0"], SPIN_HALF);
    assert!(o.status.success());
    assert_eq!(coeffs(&stdout(&o)), coeffs(SPIN_HALF));
}

#[test]
fn full_turn_negates_spin_half() {
    let o = run_with_stdin(&["rotate", "--euler", "0,6.283185307179586,0"], SPIN_HALF);
    assert!(o.status.success());
    for (rotated, original) in coeffs(&stdout(&o)).iter().zip(coeffs(SPIN_HALF)) {
        assert!((rotated.2 + original.2).abs() < 1e-12);
        assert!((rotated.3 + original.3).abs() < 1e-12);
    }
}

#[test]
fn negative_angles_parse() {
    let o = run_with_stdin(&["rotate", "--euler", "-1,-0.5,2"], SPIN_HALF);
    assert!(o.status.success(), "{}", stderr(&o));
}

#[test]
fn roundtrip_reports_a_small_error() {
    let o = run_with_stdin(&["transform", "--mode", "roundtrip"], SPIN_HALF);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["max_error"].as_f64().unwrap() <= 1e-8);
}

#[test]
fn malformed_blocks_name_the_schema_problem() {
    for bad in [
        "not json",
        r#"{"sector":"half","coeffs":[]}"#,
        r#"{"sector":"half","j_max":"1/2","coeffs":[{"two_j":2,"two_m":0,"re":1,"im":0}]}"#,
        r#"{"sector":"int","j_max":"1","coeffs":[],"extra":1}"#,
    ] {
        let o = run_with_stdin(&["rotate", "--euler", "0,0,0"], bad);
        assert_eq!(o.status.code(), Some(2), "{bad}");
        assert!(stderr(&o).contains("schema"), "{bad}: {}", stderr(&o));
    }
}

#[test]
fn synthesis_table_covers_the_grid() {
    let o = run_with_stdin(
        &["transform", "--mode", "synthesize", "--y-steps", "3", "--phi-steps", "2", "--format", "csv"],
        SPIN_HALF,
    );
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 1 + 6);
}

#[test]
fn one_point_rule_sits_at_alpha_plus_one() {
    let o = run(&["quadrature", "--n", "1", "--alpha", "2", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v[0]["node"].as_f64().unwrap() - 3.0).abs() < 1e-14);
    assert!((v[0]["weight"].as_f64().unwrap() - 2.0).abs() < 1e-14);
}
