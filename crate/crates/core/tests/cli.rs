use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn tightspace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tightspace")).args(args).output().unwrap()
}

fn report(args: &[&str]) -> (i32, Value) {
    let out = tightspace(args);
    let value = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), value)
}

#[test]
fn check_flags_structural_problems() {
    let g1 = data("g1.json");
    let (code, r) = report(&["check", g1.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["weakly_left_resolving"], true);
    let na = data("not_accommodating.json");
    let (code, r) = report(&["check", na.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(r["witnesses"][0], "family is not accommodating");
}

#[test]
fn invalid_input_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"vertices\": [").unwrap();
    let (code, r) = report(&["check", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(r["results"]["error"].as_str().unwrap().starts_with("invalid document"));

    let (code, _) = report(&["tight", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(tightspace(&["frobnicate", bad.to_str().unwrap()]).status.code(), Some(2));
    let g1 = data("g1.json");
    assert_eq!(tightspace(&["represent", g1.to_str().unwrap(), "--variant", "other"]).status.code(), Some(2));
    let (code, _) = report(&["boundary", g1.to_str().unwrap()]);
    assert_eq!(code, 2);
}

#[test]
fn tight_spectra() {
    let (code, r) = report(&["tight", data("g1.json").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["spectrum"], "spectrum = 2 points");
    let (_, r) = report(&["tight", data("g1p.json").to_str().unwrap(), "--word-bound", "2"]);
    assert_eq!(r["configuration"]["word_bound"], 2);
    assert_eq!(r["results"]["finite_type_count"], 3);
    assert_eq!(r["results"]["spectrum"], "countably infinite");
}

#[test]
fn every_command_passes_on_g2() {
    for command in ["check", "tight", "semigroup", "boundary", "surgery", "diagonal", "represent", "discriminate"] {
        let (code, r) = report(&[command, data("g2.json").to_str().unwrap(), "--samples", "50"]);
        assert_eq!(code, 0, "{command}: {}", r["witnesses"]);
        assert_eq!(r["command"], command);
    }
}

#[test]
fn variants_and_seeds_are_echoed() {
    let (code, r) = report(&["represent", data("g1.json").to_str().unwrap(), "--variant", "alt", "--seed", "11"]);
    assert_eq!(code, 0);
    assert_eq!(r["configuration"]["variant"], "alt");
    assert_eq!(r["configuration"]["seed"], 11);
    assert_eq!(r["results"]["matrices"]["S_a"], serde_json::json!([[0, 1], [1, 0]]));
}

#[test]
fn out_file_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let g1p = data("g1p.json");
    let mut outputs = Vec::new();
    for i in 0..2 {
        let path = dir.path().join(format!("r{i}.json"));
        let out = tightspace(&["diagonal", g1p.to_str().unwrap(), "--seed", "3", "--out", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
        outputs.push(std::fs::read(path).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    let stdout = tightspace(&["diagonal", g1p.to_str().unwrap(), "--seed", "3"]).stdout;
    let from_file: Value = serde_json::from_slice(&outputs[0]).unwrap();
    let from_stdout: Value = serde_json::from_slice(&stdout).unwrap();
    assert_eq!(from_file["results"], from_stdout["results"]);
}
