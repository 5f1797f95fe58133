use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::Value;

fn hamsym(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hamsym")).args(args).env_remove("HAMSYM_CAP").output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let (code, out, err) = hamsym(&all);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn analyze_prism_seven() {
    let v = json(&["analyze", "--family", "prism 7", "--tasks", "transitivity,kappa"]);
    let r = &v["result"];
    assert_eq!(r["transitive"], true);
    assert_eq!(r["class_count"], 1);
    assert_eq!(r["kappa"], 2);
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["caps"]["cycle_cap"], 1_000_000);
}

#[test]
fn cayley_cycle_graph6() {
    let (code, out, _) = hamsym(&["construct", "--family", "cayley Z5 gens=1,4", "--format", "graph6"]);
    assert_eq!(code, 0);
    let (_, cycle, _) = hamsym(&["construct", "--family", "cycle 5"]);
    assert_eq!(out, cycle);
}

#[test]
fn census_to_order_ten_is_deterministic() {
    let a = json(&["census", "--max-order", "10"]);
    let b = json(&["census", "--max-order", "10", "--jobs", "2"]);
    assert_eq!(a, b);
    let mut tags: Vec<String> = a["result"]["census"]["summary"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["family_tag"].as_str().unwrap().to_string())
        .collect();
    tags.sort();
    let mut want: Vec<String> = (3..=10).map(|n| format!("K{n}")).chain((4..=10).map(|n| format!("C{n}"))).collect();
    want.extend(["K3,3", "K4,4", "K5,5", "C3xK2 (prism)", "C4xK2 (cube)", "C5xK2 (prism)"].map(String::from));
    want.sort();
    assert_eq!(tags, want);
}

#[test]
fn census_resumes_from_disk() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let (c1, first, _) = hamsym(&["--json", "census", "--max-order", "8", "--out", out]);
    let (c2, second, _) = hamsym(&["--json", "census", "--max-order", "8", "--out", out]);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(first, second);
    let lines = std::fs::read_to_string(dir.path().join("order-08.jsonl")).unwrap();
    assert_eq!(lines.lines().count(), 10);
}

#[test]
fn graph6_from_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hamsym"))
        .args(["--json", "analyze", "-", "--tasks", "autgroup"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"Dhc\n").unwrap();
    let out = child.wait_with_output().unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["aut_order"], "10");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(hamsym(&["frobnicate"]).0, 2);
    let (code, _, err) = hamsym(&["analyze", "--family", "prism seven"]);
    assert_eq!(code, 2);
    assert!(err.contains("position 6"), "{err}");
}

#[test]
fn caps_make_results_inconclusive() {
    let out = Command::new(env!("CARGO_BIN_EXE_hamsym"))
        .args(["--json", "analyze", "--family", "prism 11"])
        .env("HAMSYM_CAP", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["caps"]["cycle_cap"], 2);
    assert_eq!(v["inconclusive"], true);
}

#[test]
fn library_errors_carry_codes() {
    let (code, _, err) = hamsym(&["factorize", "--graph6", "C?"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error[E037]"), "{err}");
}

#[test]
fn witnesses() {
    let v = json(&["witness", "zigzag", "--k", "6", "--l", "7", "--a", "3,2"]);
    assert_eq!(v["result"]["mu"], 25);
    let v = json(&["witness", "boustrophedon", "--family", "product (cycle 5) (cycle 4)"]);
    assert_eq!(v["result"]["eh_counts"], serde_json::json!([6, 12]));
}

#[test]
fn factorize_and_predict() {
    let v = json(&["factorize", "--family", "product (cycle 3) (cycle 5)"]);
    assert_eq!(v["result"]["prime_factors"].as_array().unwrap().len(), 2);
    let v = json(&["predict", "--family", "cayley Z9 gens=1,3"]);
    assert_eq!(v["result"]["prediction"]["verdict"], "NotInH");
    let v = json(&["predict", "--family", "complete 6"]);
    assert_eq!(v["result"]["prediction"]["verdict"], "InH");
}

#[test]
fn edge_orbits_of_a_truncation() {
    let v = json(&["analyze", "--family", "trunc (complete 4)", "--tasks", "edge-orbits"]);
    let ells: Vec<u64> =
        v["result"]["edge_orbits"].as_array().unwrap().iter().map(|o| o["ell"].as_u64().unwrap()).collect();
    assert_eq!(ells.len(), 2);
    assert!(ells.contains(&3) && ells.contains(&6));
}
