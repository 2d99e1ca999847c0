use std::process::Command;

use serde_json::Value;

fn chabauty(args: &[&str], env: &[(&str, &str)]) -> (i32, Value, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_chabauty"));
    cmd.args(args).env_remove("CHABAUTY_TOL").env_remove("CHABAUTY_SEED");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    let stdout = String::from_utf8(out.stdout).expect("utf-8");
    let json = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap_or(-1), json, stdout)
}

fn write_tmp(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("chabauty-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn classify_from_file() {
    let f = write_tmp("a.json", r#"{"algebra": "sl3", "span": ["H_alpha", "H_beta"]}"#);
    let (code, j, _) = chabauty(&["classify", "--algebra", "sl3", "--subspace", &f], &[]);
    assert_eq!(code, 0);
    assert_eq!(j["tag"], "CartanConj");
    assert_eq!(j["orbit_label"], "a");
}

#[test]
fn classify_rejects_non_abelian_with_exit_2() {
    let f = write_tmp("n.json", r#"{"ambient": 8, "basis": [["1","0","0","0","0","0","0","0"],["0","0","1","0","0","0","0","0"]]}"#);
    let (code, j, _) = chabauty(&["classify", "--subspace", &f], &[]);
    assert_eq!(code, 2);
    assert_eq!(j["error"]["kind"], "not-abelian");
    let (code, j, _) = chabauty(&["classify", "--subspace", "/nonexistent.json"], &[]);
    assert_eq!(code, 2);
    assert_eq!(j["error"]["kind"], "parse-error");
}

#[test]
fn verify_exit_codes_and_env() {
    let (code, j, _) = chabauty(&["verify", "--suite", "cells"], &[]);
    assert_eq!(code, 0);
    assert_eq!(j["all_pass"], true);
    let (code, j, _) = chabauty(&["verify", "--suite", "lemma57"], &[("CHABAUTY_TOL", "1e-30"), ("CHABAUTY_SEED", "9")]);
    assert_eq!(code, 1);
    assert_eq!(j["seed"], 9);
    assert!((j["tolerances"]["gap"].as_f64().unwrap() / 1e-30 - 1.0).abs() < 1e-12);
    let (code, _, _) = chabauty(&["verify", "--suite", "nope"], &[]);
    assert_eq!(code, 2);
    let (code, j, _) = chabauty(&["verify", "--suite", "thm62", "--tag", "T10"], &[]);
    assert_eq!(code, 0);
    assert_eq!(j["cases"].as_array().unwrap().len(), 3);
}

#[test]
fn usage_errors_exit_2() {
    let (code, _, _) = chabauty(&["frobnicate"], &[]);
    assert_eq!(code, 2);
    let (code, _, _) = chabauty(&["verify"], &[]);
    assert_eq!(code, 2);
}

#[test]
fn limit_and_plucker() {
    let (code, j, _) = chabauty(&["limit", "--family", "thm62-T2", "--param", "delta=alpha"], &[]);
    assert_eq!(code, 0);
    assert_eq!(j["certified"], true);
    assert_eq!(j["tol"], 1e-3);
    let (code, j, _) = chabauty(&["limit", "--family", "lemma53", "--param", "x=1@3", "--param", "y=1@3", "--param", "z=0"], &[]);
    assert_eq!(code, 0);
    assert_eq!(j["tol"], 1e-4);
    let f = write_tmp("p.json", r#"{"algebra": "sl4", "span": ["U_alpha", "U_gamma", "U_alpha+beta+gamma"]}"#);
    let (code, j, _) = chabauty(&["plucker", "--subspace", &f], &[]);
    assert_eq!(code, 0);
    assert_eq!(j["plucker"]["r"], 3);
}

#[test]
fn output_is_byte_identical_across_runs() {
    let args = ["emit-figure", "--which", "blownball", "--samples", "25", "--seed", "4"];
    let (_, j, a) = chabauty(&args, &[]);
    let (_, _, b) = chabauty(&args, &[]);
    assert_eq!(a, b);
    assert_eq!(j["points"].as_array().unwrap().len(), 25);
    let (_, _, c) = chabauty(&["verify", "--suite", "lemma53", "--seed", "2"], &[]);
    let (_, _, d) = chabauty(&["verify", "--suite", "lemma53", "--seed", "2"], &[]);
    assert_eq!(c, d);
}

#[test]
fn emit_figure_to_file() {
    let path = write_tmp("cw.json", "");
    let (code, j, _) = chabauty(&["emit-figure", "--which", "cw", "--output", &path], &[]);
    assert_eq!(code, 0);
    assert_eq!(j["written"], path.as_str());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["attaching_degrees"], serde_json::json!([0, 0, 2]));
}
