use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clspace")).args(args).output().expect("binary runs")
}

fn out_dir(tag: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("clspace-cli-{}-{tag}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    d
}

fn report(dir: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join("report.json")).unwrap()).unwrap()
}

const L1: &str = r#"{"kind": "lp", "p": 1}"#;

#[test]
fn norm_of_square_on_l1() {
    let d = out_dir("norm");
    let o = run(&[
        "norm", "--function", "square", "--space", L1, "--vector", r#"{"steps": [[0, 4, 1]]}"#, "--audit", "--out",
        d.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = report(&d);
    let n = r["results"]["norm"].as_f64().unwrap();
    assert!((n - 2.0).abs() < 1e-8, "{n}");
    assert_eq!(r["audit"]["ok"], Value::Bool(true));
    assert_eq!(r["certification"]["certified"], Value::Bool(true));
    assert!(r["provenance"]["library"].as_str().unwrap().starts_with("clspace "));
    assert!(std::fs::read_to_string(d.join("summary.csv")).unwrap().starts_with("quantity,value"));
    assert!(String::from_utf8_lossy(&o.stdout).contains("norm"));
}

#[test]
fn staircase_fails_delta_eps_at_infinity() {
    let d = out_dir("check");
    let o = run(&["check", "delta_eps", "--function", "dyadic_staircase", "--regime", "inf", "--audit", "--out", d.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = report(&d);
    let v = &r["results"]["verdicts"][0];
    assert_eq!(v["holds"], Value::Bool(false));
    assert!(!v["witness"].as_array().unwrap().is_empty());
    assert_eq!(r["audit"]["ok"], Value::Bool(true));
}

#[test]
fn malformed_json_reports_its_location() {
    let o = run(&["norm", "--function", "square", "--space", r#"{"kind": "lp","#, "--vector", r#"{"steps": []}"#]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1 column"));
}

#[test]
fn bad_flags_are_malformed_input() {
    assert_eq!(run(&["norm", "--no-such-flag"]).status.code(), Some(1));
    assert_eq!(run(&["index", "--function", "square", "--regime", "sideways"]).status.code(), Some(1));
    assert_eq!(run(&["norm", "--space", L1]).status.code(), Some(1));
}

#[test]
fn unsupported_combination_is_a_precondition_failure() {
    let o = run(&["blowup", "--function", "log1p", "--space", r#"{"kind": "seq_lp", "p": 2}"#]);
    assert_eq!(o.status.code(), Some(2), "{}", String::from_utf8_lossy(&o.stdout));
}

#[test]
fn blowup_below_target_is_not_found() {
    let o = run(&["blowup", "--function", "square", "--space", L1, "--target", "2"]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["blowup", "--function", "log1p", "--space", L1, "--audit"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
}

#[test]
fn witness_reports_are_byte_identical() {
    let space = r#"{"kind": "weighted_lp", "p": 1, "weight": {"rule": "geometric", "a": 2}}"#;
    let (a, b) = (out_dir("w1"), out_dir("w2"));
    for d in [&a, &b] {
        let o = run(&["witness", "capped", "--function", "square_capped", "--space", space, "--seed", "7", "--audit", "--out", d.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    }
    for f in ["report.json", "summary.csv"] {
        assert_eq!(std::fs::read(a.join(f)).unwrap(), std::fs::read(b.join(f)).unwrap(), "{f}");
    }
    assert_eq!(report(&a)["results"]["log_ok"], Value::Bool(true));
}

#[test]
fn index_brackets_for_all_regimes() {
    let d = out_dir("index");
    let o = run(&["index", "--function", "power:3", "--audit", "--out", d.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let r = report(&d);
    for e in r["results"]["estimates"].as_array().unwrap() {
        let (lo, hi) = (e["lo"].as_f64().unwrap(), e["hi"].as_f64().unwrap());
        assert!(lo <= 3.0 && 3.0 <= hi && hi - lo <= 0.02, "{e}");
    }
}
