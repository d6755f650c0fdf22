use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crportrait"))
        .args(args)
        .env_remove("CRC_TOL_MAX_STEPS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr_json(o: &Output) -> Value {
    let err = String::from_utf8(o.stderr.clone()).unwrap();
    let line = err.lines().rev().find(|l| l.starts_with('{')).expect("structured error line");
    serde_json::from_str(line).unwrap()
}

#[test]
fn classify_two_nodes() {
    let o = run(&["classify", "--roots", "0; 2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.matches("dicritical node").count(), 2);
    assert!(text.contains("class: Q_ANTISADDLE_PAIR"));
}

#[test]
fn integral_of_three_centers() {
    let o = run(&["integral", "--json", "--roots", "0; 1+1i; 2+2i"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let factors = v["rational"]["integral"]["factors"].as_array().unwrap();
    let m: Vec<i64> = factors.iter().map(|f| f["exponent"].as_i64().unwrap()).collect();
    assert_eq!(m, [1, -2, 1]);
    assert_eq!(v["rational"]["integral"]["form"], "circle_product");
    assert!(stdout(&run(&["integral", "--roots", "0; 1+1i; 2+2i"])).contains("exponents (1, -2, 1)"));
}

#[test]
fn degree_one_is_rejected() {
    let o = run(&["classify", "--coeffs", "0; 1; 0"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_json(&o)["error"]["code"], "DegreeUnsupported");
}

#[test]
fn malformed_input_exits_with_two() {
    for args in [
        &["classify", "--roots", "0; 1+"][..],
        &["classify"][..],
        &["classify", "--roots", "0; 1", "--coeffs", "1; 0; 0"][..],
        &["classify", "--roots", "0; 1", "--tol-class", "-1"][..],
        &["classify", "--roots", "0; 1", "--leading", "0"][..],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert_eq!(stderr_json(&o)["error"]["code"].as_str().is_some(), true);
    }
}

#[test]
fn trace_budget_exits_with_three() {
    let o = run(&["classify", "--roots", "0; 2i", "--tol-max-steps", "10"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(stderr_json(&o)["error"]["code"], "TraceBudgetExceeded");
    let o = Command::new(env!("CARGO_BIN_EXE_crportrait"))
        .args(["classify", "--roots", "0; 2i"])
        .env("CRC_TOL_MAX_STEPS", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing");
    v
}

#[test]
fn report_round_trips_through_roots() {
    for (roots, leading) in [("0; 1+1i; 2+2i", "1"), ("0.3-1i; 2i", "2-1i"), ("0; 0; 1.5", "1"), ("1; -1; 0.5i", "-3")] {
        let first = run(&["report", "--json", "--roots", roots, "--leading", leading]);
        assert_eq!(first.status.code(), Some(0), "{roots}");
        let v: Value = serde_json::from_str(&stdout(&first)).unwrap();
        assert_eq!(v["schema"], 1);
        let echoed: Vec<&str> = v["input"]["roots"].as_array().unwrap().iter().map(|r| r.as_str().unwrap()).collect();
        let again = run(&[
            "report",
            "--json",
            "--roots",
            &echoed.join("; "),
            "--leading",
            v["input"]["leading"].as_str().unwrap(),
        ]);
        let w: Value = serde_json::from_str(&stdout(&again)).unwrap();
        assert_eq!(without_timing(v), without_timing(w), "{roots}");
    }
}

#[test]
fn report_field_order_is_fixed() {
    let o = run(&["report", "--json", "--roots", "0; 2"]);
    let text = stdout(&o);
    let keys = ["\"schema\"", "\"input\"", "\"equilibria\"", "\"consistency\"", "\"darboux\"", "\"rational\"", "\"topology\"", "\"timing\""];
    let pos: Vec<usize> = keys.iter().map(|k| text.find(k).unwrap()).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn conjectured_absence_is_flagged() {
    let o = run(&["report", "--json", "--roots", "0; 0; 1.5+1i"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rational"]["status"], "absent");
    assert_eq!(v["rational"]["reason"], "double_root_conjecture");
    assert!(v["rational"]["note"].is_string());
    assert_eq!(v["topology"]["class"], "C_DOUBLE_WITH_SOURCE");
}

#[test]
fn portrait_is_written_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    for path in [&a, &b] {
        let o = run(&["portrait", "--roots", "0; 1+1i; 2+2i", "--levels", "0.5; 1; 2", "--out", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    let svg = std::fs::read_to_string(&a).unwrap();
    assert!(svg.starts_with("<?xml"));
    assert!(svg.contains(r#"width="800""#));
    assert!(svg.contains(r#"class="levels""#));
    assert_eq!(svg, std::fs::read_to_string(&b).unwrap());
}

#[test]
fn levels_need_a_rational_integral() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("f.svg");
    let o = run(&["portrait", "--roots", "0; 1+2i", "--levels", "1", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stderr_json(&o)["error"]["code"], "NonRationalIntegral");
}

#[test]
fn every_reference_system_runs_end_to_end() {
    let systems = [
        "0; 2", "0; 1+2i", "0; 2i", "0; 0", "0; 0; 0", "0; 0; 1.5i", "0; 0; 1+2i", "0; 0; 1+1i", "0; 0; 1.5+1i",
        "0; 0; 1.5", "0; 1+1i; 2+2i", "0; -1; -1i", "0; -1; 1+1i", "0; 1i; -1-1i",
    ];
    for roots in systems {
        let start = std::time::Instant::now();
        let o = run(&["report", "--json", "--roots", roots]);
        assert_eq!(o.status.code(), Some(0), "{roots}");
        assert!(start.elapsed().as_secs_f64() < 10.0);
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert!(v["topology"]["class"].is_string(), "{roots}");
    }
}
