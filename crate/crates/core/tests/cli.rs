//! End-to-end runs of the `bianchi` binary.

use std::process::Command;

use serde_json::Value;

fn bianchi(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_bianchi")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = bianchi(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn split_reports_type() {
    assert_eq!(json(&["split", "-d", "-3", "-p", "2"])["type"], "inert");
    assert_eq!(json(&["split", "-d", "-7", "-p", "2"])["type"], "split");
    assert_eq!(json(&["split", "-d", "-1", "-p", "2"])["type"], "ramified");
}

#[test]
fn index_matches_oracle() {
    let v = json(&["index", "-d", "-1", "--ideal", "(3)"]);
    assert_eq!((v["closed_form"].as_u64(), v["oracle"].as_u64(), v["match"].as_bool()), (Some(720), Some(720), Some(true)));
    let v = json(&["index", "-d", "-1", "--ideal", "hnf:6,0,6"]);
    assert_eq!(v["closed_form"], 34560);
}

#[test]
fn factor_and_classnum() {
    let v = json(&["factor", "-d", "-5", "--ideal", "(6)"]);
    assert_eq!(v.as_array().unwrap().len(), 3);
    assert_eq!(json(&["classnum", "-d", "-23"])["class_number"], 3);
}

#[test]
fn verification_commands_exit_zero() {
    for args in [
        vec!["verify-surjectivity", "-d", "-5", "--ideal", "(3, 1-w)"],
        vec!["verify-filtration", "-d", "-2", "--ideal", "(w)", "-m", "1"],
        vec!["verify-multiplicativity", "-d", "-1", "--ideal", "(1+w)", "--ideal", "(3)"],
        vec!["verify-wohlfahrt", "-d", "-1", "-m", "2", "-n", "3"],
        vec!["verify-lemma61", "-d", "-7"],
        vec!["verify-appendix-a", "-d", "-5", "-q", "5"],
        vec!["certify", "-d", "-2", "-q", "5"],
        vec!["power-status", "-d", "-23"],
    ] {
        let (code, _, err) = bianchi(&args);
        assert_eq!(code, 0, "{args:?}: {err}");
    }
}

#[test]
fn preconditions_exit_two_and_name_the_problem() {
    let (code, _, err) = bianchi(&["verify-appendix-a", "-d", "-1", "-q", "5"]);
    assert_eq!(code, 2);
    assert!(err.contains("ramified"), "{err}");
    let (code, _, err) = bianchi(&["verify-appendix-a", "-d", "-5", "-q", "2"]);
    assert_eq!(code, 2);
    assert!(err.contains("at least 5"), "{err}");
    let (code, _, err) = bianchi(&["classnum", "-d", "-12"]);
    assert_eq!(code, 2);
    assert!(err.contains("squarefree"), "{err}");
    assert_eq!(bianchi(&["index", "-d", "-1", "--ideal", "(1)"]).0, 2);
}

#[test]
fn sweep_formats_and_determinism() {
    let base = ["sweep", "--suite", "lemma61", "--d-min", "-20", "--d-max", "-1"];
    let (c1, one, _) = bianchi(&[&base[..], &["--parallelism", "1"]].concat());
    let (c4, four, _) = bianchi(&[&base[..], &["--parallelism", "4"]].concat());
    assert_eq!((c1, c4), (0, 0));
    assert_eq!(one, four);

    let (code, csv, _) = bianchi(&[&base[..], &["--format", "csv"]].concat());
    assert_eq!(code, 0);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("suite,d,item,status"));
    assert!(lines.all(|l| l.ends_with(",pass")));
}

#[test]
fn sweep_skip_is_not_failure() {
    let (code, out, _) = bianchi(&["sweep", "--suite", "wohlfahrt", "--d-min", "-1", "--d-max", "-1"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["summary"]["skip"], 1);
    assert_eq!(v["summary"]["pass"], 3);
}
