//! End-to-end runs of the `qwhit` binary: tables, exit codes, determinism.

use std::process::{Command, Output};

use qwhit::arith::{rat, QRatFn, UniPoly, ZLaurent};
use serde_json::Value;

fn qwhit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qwhit"))
        .args(args)
        .env_remove("QWHIT_BUDGET")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json table")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn whittaker_window_table() {
    let out = qwhit(&["whittaker", "--ell", "1", "--window", "0..2"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = json(&out);
    let points: Vec<Value> = rows.as_array().unwrap().iter().map(|r| r["point"].clone()).collect();
    assert_eq!(
        points,
        serde_json::from_str::<Vec<Value>>("[[0,0],[1,0],[1,1],[2,0],[2,1],[2,2]]").unwrap()
    );
    // (z₁ + z₂)/(1 − q)
    let c = QRatFn::from_poly(UniPoly::one_minus(rat(1), 1)).inv().unwrap();
    let expect = &ZLaurent::var(2, 0).scale(&c) + &ZLaurent::var(2, 1).scale(&c);
    assert_eq!(ZLaurent::from_json(&rows[1]["value"], 2).unwrap(), expect);
}

#[test]
fn non_dominant_point_is_zero() {
    let out = qwhit(&["whittaker", "--ell", "1", "--point", "0,1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = &json(&out)[0]["value"];
    assert!(ZLaurent::from_json(v, 2).unwrap().is_zero());
}

#[test]
fn empty_window_is_empty_table() {
    let out = qwhit(&["whittaker", "--window", "3..2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out), Value::Array(vec![]));
    let out = qwhit(&["whittaker", "--window", "3..2", "--format", "csv"]);
    assert_eq!(stdout(&out), "point,value\n");
}

#[test]
fn verify_suites_pass() {
    let out = qwhit(&["verify", "eigen", "--ell", "2", "--window", "0..2"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = json(&out);
    assert!(!rows.as_array().unwrap().is_empty());
    assert!(rows.as_array().unwrap().iter().all(|r| r["pass"] == Value::Bool(true)));

    let out = qwhit(&["verify", "localization", "--ell", "1", "--d", "2", "--n", "3", "--seed", "7", "--reps", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out).as_array().unwrap().len(), 5);
}

#[test]
fn perturbations_fail_with_exit_one() {
    for args in [
        &["verify", "eigen", "--ell", "2", "--window", "0..2", "--perturb", "drop-first-factor"][..],
        &["verify", "difference", "--ell", "2", "--n", "3", "--perturb", "wrong-eigenvalue"],
        &["verify", "eigprop", "--ell", "1", "--n", "2", "--perturb", "wrong-eigenvalue"],
        &["verify", "localization", "--ell", "1", "--d", "2", "--n", "3", "--perturb", "off-by-one"],
        &["toda", "--ell", "1", "--perturb", "drop-first-factor"],
    ] {
        let out = qwhit(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
    }
    let out = qwhit(&["verify", "difference", "--ell", "2", "--n", "3", "--perturb", "wrong-eigenvalue"]);
    let row = &json(&out)[0];
    assert!(row["lhs"].is_string() && row["rhs"].is_string() && row["lhs"] != row["rhs"]);
}

#[test]
fn character_examples() {
    let out = qwhit(&["char", "--ell", "1", "--d", "1", "--n", "1", "--format", "csv"]);
    assert_eq!(stdout(&out), "d,n,k,value\n1,1,0,(1 + q)*z2 + (1 + q)*z1\n");
    let out = qwhit(&["char", "--ell", "1", "--d", "0", "--n", "2", "--q", "0", "--format", "csv"]);
    assert_eq!(stdout(&out), "d,n,k,value\n0,2,0,z2^2 + z1*z2 + z1^2\n");
    let out = qwhit(&["char", "--limit", "--q-order", "4", "--ell", "2", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)[0]["matches_psi"], Value::Bool(true));
}

#[test]
fn budget_exhaustion_exits_three() {
    let out = qwhit(&["char", "--oracle", "--ell", "2", "--d", "2", "--n", "4", "--budget", "100"]);
    assert_eq!(out.status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_qwhit"))
        .args(["char", "--oracle", "--ell", "2", "--d", "2", "--n", "4", "--budget", "100000"])
        .env("QWHIT_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = qwhit(&["char", "--oracle", "--ell", "2", "--d", "2", "--n", "4", "--budget", "495"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)[0]["monomials"], Value::String("495".into()));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["whittaker", "--window", "2"][..],
        &["localize", "--reps", "0"],
        &["char", "--q", "1"],
        &["toda", "--ell", "1", "--r", "3"],
        &["spec", "--n", "-1"],
        &["verify", "nonsense"],
        &["whittaker", "--config", "/nonexistent/run.toml"],
    ] {
        assert_eq!(qwhit(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["localize", "--ell", "2", "--d", "1", "--n", "2", "--seed", "41", "--reps", "4", "--format", "csv"];
    let a = qwhit(&args);
    let b = qwhit(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let a = qwhit(&["verify-all"]);
    let b = qwhit(&["verify-all"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn config_file_below_flags() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.toml");
    std::fs::write(&path, "ell = 2\nwindow = \"1..1\"\nformat = \"csv\"\n").unwrap();
    let p = path.to_str().unwrap();
    let out = qwhit(&["whittaker", "--config", p]);
    assert_eq!(stdout(&out).lines().count(), 2);
    assert!(stdout(&out).starts_with("point,value\n\"(1,1,1)\""));
    let out = qwhit(&["whittaker", "--config", p, "--ell", "1", "--format", "json"]);
    assert_eq!(json(&out)[0]["point"], serde_json::json!([1, 1]));
}

#[test]
fn spec_and_jfunction_tables() {
    let out = qwhit(&["spec", "--ell", "2", "--window", "0..3", "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = json(&out);
    assert_eq!(rows.as_array().unwrap().len(), 4);
    assert!(rows
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["difference_equation"] == Value::Bool(true) && r["series_agrees"] == Value::Bool(true)));
    let out = qwhit(&["jfunction", "--ell", "1", "--n", "2", "--q-order", "3", "--seed", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = json(&out);
    let items: Vec<&str> = rows.as_array().unwrap().iter().map(|r| r["item"].as_str().unwrap()).collect();
    assert_eq!(items,["z", "I@1/z1", "I@1/z2", "pairing", "psi", "pairing_equals_psi", "eigenproperty"]);
}

#[test]
fn genus_table() {
    let out = qwhit(&["genus", "--t-order", "3", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let s = stdout(&out);
    assert!(s.contains("group_law,z + w - z*w + O(deg 4)"));
    assert!(s.contains("genus(P^2),1\n"));
    let out = qwhit(&["genus", "--log", "additive", "--t-order", "3", "--format", "csv"]);
    assert!(stdout(&out).contains("group_law,z + w + O(deg 4)"));
}
