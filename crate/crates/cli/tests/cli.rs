// SPDX-License-Identifier: Apache-2.0

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn amalgadim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_amalgadim"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn gen(dir: &TempDir, file: &str, args: &[&str]) -> PathBuf {
    let path = dir.path().join(file);
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend(["-o", path.to_str().unwrap()]);
    let out = amalgadim(&full);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    path
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_writes_canonical_instances() {
    let dir = TempDir::new().unwrap();
    let dhc = read_json(&gen(&dir, "dhc8.json", &["dhc", "8"]));
    assert_eq!(dhc["order"], 10);
    assert_eq!(dhc["terminal_edge"], serde_json::json!([5, 6]));
    assert_eq!(dhc["labels"]["8"], "y2");
    assert_eq!(dhc["edges"].as_array().unwrap().len(), 14);

    let k33 = read_json(&gen(&dir, "k33.json", &["complete_bipartite", "3", "3"]));
    assert_eq!(k33["order"], 6);
    assert_eq!(k33["terminal_edge"], serde_json::json!([2, 5]));
}

#[test]
fn gen_rejects_bad_parameters() {
    let out = amalgadim(&["gen", "path", "1"]);
    assert_eq!(code(&out), 4);
    assert!(stderr(&out).contains("path"), "{}", stderr(&out));
    assert_eq!(code(&amalgadim(&["gen", "wheel", "5"])), 4);
    assert_eq!(code(&amalgadim(&["gen", "complete_bipartite", "3"])), 4);
}

#[test]
fn amalgamate_orders() {
    let dir = TempDir::new().unwrap();
    let k4 = gen(&dir, "k4.json", &["complete", "4"]);
    let k5 = gen(&dir, "k5.json", &["complete", "5"]);
    let k33 = gen(&dir, "k33.json", &["complete_bipartite", "3", "3"]);

    let va = dir.path().join("va.json");
    let out = amalgadim(&["amalgamate", "vertex", s(&k4), s(&k5), "-o", s(&va)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let va_json = read_json(&va);
    assert_eq!(va_json["order"], 8);
    assert_eq!(va_json["terminal_vertex"], 0);
    assert_eq!(va_json["labels"]["0"], "b0:0=b1:0");

    let ea = dir.path().join("ea.json");
    let out = amalgadim(&["amalgamate", "edge", s(&k33), s(&k33), "-o", s(&ea)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let ea_json = read_json(&ea);
    assert_eq!(ea_json["order"], 10);
    assert_eq!(ea_json["edges"].as_array().unwrap().len(), 17);

    let out = amalgadim(&["dim", s(&va)]);
    assert!(stdout(&out).starts_with("dim: 5\n"), "{}", stdout(&out));
    let out = amalgadim(&["dim", s(&ea)]);
    assert!(stdout(&out).starts_with("dim: 4\n"), "{}", stdout(&out));
}

#[test]
fn amalgamate_requires_terminals() {
    let dir = TempDir::new().unwrap();
    let bare = dir.path().join("path2.json");
    std::fs::write(&bare, r#"{"order": 2, "edges": [[0, 1]]}"#).unwrap();
    let out = amalgadim(&["amalgamate", "edge", s(&bare)]);
    assert_eq!(code(&out), 4);
    assert!(stderr(&out).contains("no terminal edge"), "{}", stderr(&out));
    // an override supplies the missing terminal
    let out = amalgadim(&["amalgamate", "edge", s(&bare), s(&bare), "--terminal-edge", "0:0,1", "--terminal-edge", "1:1,0"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let merged: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(merged["order"], 2);
}

#[test]
fn flip_changes_edge_orientation() {
    let dir = TempDir::new().unwrap();
    let p3 = gen(&dir, "p3.json", &["path", "3"]);
    let k13 = gen(&dir, "k13.json", &["complete_bipartite", "1", "3"]);
    let plain = amalgadim(&["amalgamate", "edge", s(&p3), s(&k13)]);
    let flipped = amalgadim(&["amalgamate", "edge", s(&p3), s(&k13), "--flip", "1"]);
    assert_eq!(code(&plain), 0);
    assert_eq!(code(&flipped), 0);
    assert_ne!(stdout(&plain), stdout(&flipped));
    assert_eq!(code(&amalgadim(&["amalgamate", "edge", s(&p3), "--flip", "3"])), 4);
}

#[test]
fn dim_reports_labels_and_json() {
    let dir = TempDir::new().unwrap();
    let dhc = gen(&dir, "dhc8.json", &["dhc", "8"]);
    let out = amalgadim(&["dim", s(&dhc), "--method", "exact"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("dim: 2\n"), "{text}");
    assert!(text.contains("basis: x2 x5\n"), "{text}");
    assert!(text.contains("method: exact\n"), "{text}");

    let out = amalgadim(&["dim", s(&dhc), "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["dim"], 2);
    assert_eq!(v["basis"], serde_json::json!([1, 4]));
    assert_eq!(v["basis_labels"], serde_json::json!(["x2", "x5"]));
    assert_eq!(v["method"], "exact");
    assert_eq!(v["certificate"].as_object().unwrap().len(), 10);

    let k33 = gen(&dir, "k33.json", &["complete_bipartite", "3", "3"]);
    let out = amalgadim(&["dim", s(&k33), "--method", "greedy", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["method"], "greedy");
    assert!(v["dim"].as_u64().unwrap() >= 4);
}

#[test]
fn dim_exit_codes() {
    let dir = TempDir::new().unwrap();
    let split = dir.path().join("two-component.json");
    std::fs::write(&split, r#"{"order": 4, "edges": [[0, 1], [2, 3]]}"#).unwrap();
    assert_eq!(code(&amalgadim(&["dim", s(&split)])), 2);

    // no twins, so the search cannot start above size 1
    let c20 = gen(&dir, "c20.json", &["cycle", "20"]);
    let out = amalgadim(&["--budget", "10", "dim", s(&c20)]);
    assert_eq!(code(&out), 3, "{}", stderr(&out));

    let missing = dir.path().join("missing.json");
    assert_eq!(code(&amalgadim(&["dim", s(&missing)])), 4);
    assert_eq!(code(&amalgadim(&["dim"])), 4);
    assert_eq!(code(&amalgadim(&["--help"])), 0);
}

#[test]
fn verify_reports_failures_through_exit_code() {
    let out = amalgadim(&["verify", "t3", "--orders-max", "5", "--n-max", "3"]);
    // the printed complete-graph formulas disagree with brute force on
    // blocks of order 2 and 3
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("FAIL T3 edge K[2, 2]"), "{}", stderr(&out));

    let out = amalgadim(&["verify", "t2"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("theorem\tinstance\tpredicted\tobserved\tstatus\truntime"));
    assert_eq!(lines.count(), 100);
    assert!(stderr(&out).ends_with("100 rows: 100 pass, 0 fail, 0 audit\n"));

    assert_eq!(code(&amalgadim(&["verify", "t7"])), 4);
}

#[test]
fn verify_families_and_ladders() {
    let out = amalgadim(&["verify", "families"]);
    assert_eq!(code(&out), 1);
    let fails: Vec<_> = stderr(&out).lines().filter(|l| l.starts_with("FAIL")).map(str::to_owned).collect();
    assert_eq!(fails.len(), 2, "{fails:?}");
    assert!(fails.iter().all(|l| l.contains("DHC7")));

    let out = amalgadim(&["verify", "ladders", "--n", "3", "--format", "json"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let rows: Vec<Value> = stdout(&out).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(rows.iter().all(|r| r["instance"].as_str().unwrap().starts_with("n=3 ")));
    for r in &rows {
        for field in ["theorem", "instance", "predicted", "observed", "status", "runtime"] {
            assert!(r.get(field).is_some(), "{r}");
        }
    }
    let audits = rows.iter().filter(|r| r["status"] == "audit").count();
    assert!(audits > 0);
    assert!(rows.iter().any(|r| r["instance"].as_str().unwrap().contains("subdivided star")));
    assert!(rows.iter().any(|r| r["instance"].as_str().unwrap().contains("all-DHC")));
}

#[test]
fn verify_row_order_is_independent_of_jobs() {
    let strip_runtime = |o: &Output| -> Vec<String> {
        stdout(o)
            .lines()
            .map(|l| l.rsplit_once('\t').map_or(l, |(head, _)| head).to_owned())
            .collect()
    };
    let one = amalgadim(&["--jobs", "1", "verify", "t5", "--mixed-count", "30"]);
    let four = amalgadim(&["--jobs", "4", "verify", "t5", "--mixed-count", "30"]);
    assert_eq!(code(&one), 0, "{}", stderr(&one));
    assert_eq!(strip_runtime(&one), strip_runtime(&four));
    let other_seed = amalgadim(&["verify", "t5", "--mixed-count", "30", "--seed", "7"]);
    assert_ne!(strip_runtime(&one), strip_runtime(&other_seed));
}

#[test]
fn graph6_input_and_output() {
    let dir = TempDir::new().unwrap();
    let out = amalgadim(&["gen", "complete", "4", "--g6"]);
    assert_eq!(stdout(&out), "C~\n");
    let g6 = gen(&dir, "pr4.g6", &["prism", "4", "--g6"]);
    let json = gen(&dir, "pr4.json", &["prism", "4"]);
    let a = amalgadim(&["dim", s(&g6), "--g6", "--format", "json"]);
    let b = amalgadim(&["dim", s(&json), "--format", "json"]);
    let dim = |o: &Output| serde_json::from_str::<Value>(&stdout(o)).unwrap()["basis"].clone();
    assert_eq!(dim(&a), dim(&b));

    let bad = dir.path().join("bad.g6");
    std::fs::write(&bad, "D\n").unwrap();
    assert_eq!(code(&amalgadim(&["dim", s(&bad), "--g6"])), 4);
}

#[test]
fn gen_output_round_trips() {
    let dir = TempDir::new().unwrap();
    let path = gen(&dir, "k23.json", &["complete_bipartite", "2", "3"]);
    let first = std::fs::read_to_string(&path).unwrap();
    let amal = amalgadim(&["amalgamate", "vertex", s(&path)]);
    let v: Value = serde_json::from_str(&stdout(&amal)).unwrap();
    let original: Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["order"], original["order"]);
    assert_eq!(v["edges"], original["edges"]);
    assert_eq!(v["labels"]["2"], "b0:y1");
}
