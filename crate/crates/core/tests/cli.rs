use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn zf_lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zf-lab")).args(args).output().unwrap()
}

fn zf_lab_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_zf-lab"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn compute_reports_all_parameters() {
    let out = zf_lab(&["compute", "--g6", "Dhc"]);
    assert_eq!(out.status.code(), Some(0));
    let rep = &lines(&out)[0];
    assert_eq!(rep["n"], 5);
    let values: Vec<(String, u64)> = rep["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["parameter"].as_str().unwrap().to_string(), r["value"].as_u64().unwrap()))
        .collect();
    // C_5
    let expect = [("Z", 2), ("Z+", 2), ("P", 2), ("T", 2), ("cc", 5)];
    assert_eq!(values, expect.map(|(p, v)| (p.to_string(), v)).to_vec());
}

#[test]
fn compute_reads_edge_lists_from_stdin() {
    let out = zf_lab_stdin(&["compute", "-", "-p", "Z,P"], "4\n0 1\n1 2\n2 3\n");
    assert_eq!(out.status.code(), Some(0));
    let rep = &lines(&out)[0];
    assert_eq!(rep["results"][0]["value"], 1);
    assert_eq!(rep["results"][1]["value"], 1);
}

#[test]
fn compute_writes_dot() {
    let dir = std::env::temp_dir().join(format!("zf-lab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("k4.dot");
    let out = zf_lab(&["compute", "--g6", "C~", "-p", "Z", "--dot", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let dot = std::fs::read_to_string(&path).unwrap();
    assert!(dot.starts_with("graph"));
    assert_eq!(dot.matches("--").count(), 6);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn budget_exhaustion_exits_three() {
    let out = zf_lab(&["compute", "--g6", "Oh`HGcG@GC_H?G?C_@G?H", "-p", "Z", "--budget", "3"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(lines(&out)[0]["results"][0]["error"].is_string());
}

#[test]
fn parse_and_usage_errors_exit_two() {
    assert_eq!(zf_lab(&["compute", "--g6", "!!"]).status.code(), Some(2));
    assert_eq!(zf_lab(&["compute", "--g6", "Bw", "-p", "Q"]).status.code(), Some(2));
    assert_eq!(zf_lab(&["verify", "no_such_suite"]).status.code(), Some(2));
    assert_eq!(zf_lab(&["gen", "{\"family\":\"cycle\"}"]).status.code(), Some(2));
    assert_eq!(zf_lab(&["gen", "{\"family\":\"cycle\",\"n\":2}"]).status.code(), Some(2));
    assert_eq!(zf_lab(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn verify_emits_json_lines_and_a_summary() {
    let out = zf_lab(&["verify", "block_cycle_ZP", "--trials", "5", "--max-n", "9", "--seed", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let ls = lines(&out);
    assert_eq!(ls.len(), 6);
    for l in &ls[..5] {
        assert_eq!(l["outcome"], "pass");
        assert!(l["instance"]["specs"][0]["seed"].is_u64());
    }
    assert_eq!(ls[5]["summary"]["passed"], 5);
}

#[test]
fn verify_failures_replay_from_the_report() {
    // a known series of parallel paths where the layer count exceeds Z
    let spec = r#"{"family":"series_parallel_paths","lengths":[3,4,4,1],"seed":17133107264002473777}"#;
    let out = zf_lab(&["gen", spec]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "KA`H_PUXs?c@");
    let out = zf_lab(&["compute", "--g6", "KA`H_PUXs?c@", "-p", "Z,P"]);
    let rep = &lines(&out)[0];
    assert_eq!(rep["results"][0]["value"], 3);
    assert_eq!(rep["results"][1]["value"], 2);
}

#[test]
fn gen_is_deterministic() {
    let spec = r#"{"family":"outerplanar","n":9,"inner_keep":0.5,"seed":12}"#;
    let a = zf_lab(&["gen", spec]);
    let b = zf_lab(&["gen", spec]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let json = zf_lab(&["gen", spec, "--format", "json"]);
    let v: Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(v["n"], 9);
    let edges = zf_lab(&["gen", spec, "--format", "edges"]);
    assert!(String::from_utf8_lossy(&edges.stdout).starts_with("9\n"));
}

#[test]
fn search_reports_without_failing() {
    let out = zf_lab(&["search", "--max-n", "5", "--pairs", "5", "--trials", "2", "--families", "tree,block_cycle"]);
    assert_eq!(out.status.code(), Some(0));
    let rep: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(rep["sums"].as_u64().unwrap() > 0);
    assert!(rep["probe"]["covers"].is_u64());
    assert_eq!(zf_lab(&["search", "--families", "nope"]).status.code(), Some(2));
}
