use std::path::PathBuf;
use std::process::{Command, Output};

fn repwild(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_repwild")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = repwild(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    serde_json::from_str(&stdout(&full)).expect("valid JSON")
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("repwild-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn counts_over_cyclic_groups() {
    for (p, n) in [("2", "5"), ("3", "9"), ("5", "17"), ("7", "25")] {
        assert_eq!(stdout(&["strings", "count", "--coh-mackey", p, "1"]).trim(), n);
    }
}

#[test]
fn c2_strings_in_tsv() {
    let out = stdout(&["--format", "tsv", "strings", "enumerate", "--coh-mackey", "2", "1"]);
    let words: Vec<&str> = out.lines().filter_map(|l| l.strip_prefix("string\t")).collect();
    assert_eq!(words, ["e0", "e1", "a", "b", "a·b"]);
}

#[test]
fn algebra_dump() {
    let v = json(&["algebra", "--coh-mackey", "2", "1"]);
    assert_eq!(v["dim"], 5);
}

#[test]
fn singularity_components() {
    assert_eq!(stdout(&["sing-cyclic", "3", "2"]).trim(), "1 5");
    let v = json(&["sing-cyclic", "2", "1"]);
    assert_eq!(v["components"], serde_json::json!([0]));
}

#[test]
fn decompose_and_hom_from_files() {
    let rep = temp_file("sum.json", r#"{"dims":[2,2],"maps":{"a":[[1,0],[0,0]],"b":[[0,0],[0,1]]}}"#);
    let rep = rep.to_str().unwrap();
    let v = json(&["decompose", "--coh-mackey", "2", "1", "--rep", rep]);
    assert_eq!(v["indecomposable"], false);
    assert_eq!(v["summands"].as_array().unwrap().len(), 2);
    assert_eq!(stdout(&["hom", "--coh-mackey", "2", "1", "--from", rep, "--to", rep]).trim(), "4");
}

#[test]
fn homotopy_strings_have_no_bands() {
    let out = stdout(&["complexes", "strings", "--coh-mackey", "2", "1", "--max-letters", "3"]);
    assert!(out.contains("(b)(ab)(a)"));
    assert!(out.trim_end().ends_with("bands 0"));
}

#[test]
fn infinite_families() {
    let out = stdout(&["family", "c4", "--nmax", "3"]);
    assert!(out.contains("pairwise non-isomorphic true"));
    assert_eq!(out.matches("indecomposable true").count(), 3);
}

#[test]
fn verify_family_is_deterministic() {
    let args = ["--seed", "7", "--format", "json", "verify-family", "mackey-c2", "--samples", "12"];
    let first = stdout(&args);
    assert_eq!(first, stdout(&args));
    let v: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["seed"], 7);
    assert_eq!(v["pairs_checked"], 66);
}

#[test]
fn klein_tables_match() {
    let out = stdout(&["klein-tables", "--nmax", "2"]);
    assert!(out.contains("M((ab~)^n)"));
    assert!(!out.contains("MISMATCH"));
}

#[test]
fn exit_codes() {
    assert_eq!(repwild(&["bogus"]).status.code(), Some(2));
    assert_eq!(repwild(&["strings", "count", "--coh-mackey", "4", "1"]).status.code(), Some(2));
    let bad = temp_file("bad.json", r#"{"dims":[1,1],"maps":{"a":[[1]],"b":[[1]]}}"#);
    let out = repwild(&["decompose", "--coh-mackey", "2", "1", "--rep", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("relations"));
}
