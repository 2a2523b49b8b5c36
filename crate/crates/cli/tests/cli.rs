use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn corpus(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/corpus").join(name);
    p.to_string_lossy().into_owned()
}

fn data(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name);
    p.to_string_lossy().into_owned()
}

fn gbtc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gbtc")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn bound_on_theta() {
    let out = gbtc(&["bound", &corpus("theta.json"), "--r", "3", "--k", "4"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!((v["lower"].as_u64(), v["upper"].as_u64()), (Some(4), Some(6)));
    assert_eq!(v["homology_input"], "assumed");
}

#[test]
fn bound_with_homology_check() {
    let out = gbtc(&["bound", &corpus("h_graph.json"), "--r", "2", "--k", "2", "--verify-homology"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["homology_input"], "verified");
}

#[test]
fn stable_on_h_graph() {
    let v = json(&gbtc(&["stable", &corpus("h_graph.json"), "--r", "2"]));
    assert_eq!((v["stable_value"].as_u64(), v["k0"].as_u64()), (Some(4), Some(6)));
}

#[test]
fn disconnected_graph_is_refused() {
    let out = gbtc(&["classify", &data("two_components.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("connected graph with m(Γ) ≥ 2 required"));
}

#[test]
fn unreadable_input_is_an_input_error() {
    assert_eq!(gbtc(&["classify", "/nonexistent/graph.json"]).status.code(), Some(1));
}

#[test]
fn lambda_json_and_dot() {
    let v = json(&gbtc(&["lambda", &corpus("h_graph.json"), "--vertex", "u", "--k", "2"]));
    assert_eq!(v["pi1_rank"].as_u64(), Some(1));
    assert_eq!(v["vertices"].as_array().unwrap().len(), 9);
    let dot = gbtc(&["lambda", &corpus("h_graph.json"), "--vertex", "u", "--k", "2", "--dot"]);
    let text = String::from_utf8(dot.stdout).unwrap();
    assert!(text.starts_with("graph lambda {"));
    assert!(text.contains("(2,0,0)"));
    assert_eq!(gbtc(&["lambda", &corpus("h_graph.json"), "--vertex", "u", "--k", "0"]).status.code(), Some(2));
}

#[test]
fn self_checks_pass() {
    let out = gbtc(&["verify-lemmas", "--n", "5"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["passed"], true);
}

#[test]
fn homology_and_budget() {
    let v = json(&gbtc(&["homology", &corpus("theta.json"), "--k", "2"]));
    assert_eq!(v["nonvanishing"], true);
    let out = Command::new(env!("CARGO_BIN_EXE_gbtc"))
        .args(["homology", &corpus("theta.json"), "--k", "4"])
        .env("GBTC_CELL_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn boundary_dump() {
    let dir = std::env::temp_dir().join(format!("gbtc-boundary-{}", std::process::id()));
    let path = dir.to_string_lossy().into_owned();
    assert!(gbtc(&["homology", &corpus("star3.json"), "--k", "2", "--dump-boundary", &path]).status.success());
    let text = std::fs::read_to_string(&dir).unwrap();
    std::fs::remove_file(&dir).ok();
    assert!(text.lines().any(|l| l.starts_with("# 1 ")));
}

#[test]
fn corpus_table_rows() {
    let out = gbtc(&["corpus", "--table", "--r", "2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    for name in ["star3", "h_graph", "theta", "spider", "random10"] {
        assert!(text.contains(name), "{name} missing");
    }
}
