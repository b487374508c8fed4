use std::fs;
use std::process::{Command, Output};

use orbitgraph::graph::CommutingGraph;

fn orbitgraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbitgraph")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn catalog_list_names_every_entry() {
    let o = orbitgraph(&["catalog", "list"]);
    assert_eq!(o.status.code(), Some(0));
    for name in orbitgraph::constructors::catalog_names() {
        assert!(stdout(&o).contains(name), "{name}");
    }
}

#[test]
fn analyze_writes_dot_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("g.dot");
    let json = dir.path().join("g.json");
    let report = dir.path().join("r.json");
    let o = orbitgraph(&[
        "analyze",
        "--group",
        "e1-order12",
        "--action",
        "A",
        "--dot",
        dot.to_str().unwrap(),
        "--json",
        json.to_str().unwrap(),
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let dot = fs::read_to_string(dot).unwrap();
    assert_eq!(dot.matches(" -- ").count(), 5);
    let graph = CommutingGraph::import_json(&fs::read_to_string(json).unwrap()).unwrap();
    assert_eq!((graph.vertex_count(), graph.edge_count()), (5, 5));
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(report["theorem_case"]["case"]["case"], "case4_frobenius");
}

#[test]
fn analyze_reads_group_and_action_files() {
    let dir = tempfile::tempdir().unwrap();
    let group = dir.path().join("a4.json");
    let action = dir.path().join("s4.json");
    fs::write(&group, r#"{"kind": "alt", "params": [4]}"#).unwrap();
    fs::write(&action, r#"{"name": "S4", "overgroup": [[1, 0, 2, 3], [1, 2, 3, 0]]}"#).unwrap();
    let o = orbitgraph(&["analyze", "--group", group.to_str().unwrap(), "--action", action.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("action     S4 (order 24 on G)"));
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(orbitgraph(&["analyze", "--group", "nonsense", "--action", "inner"]).status.code(), Some(2));
    assert_eq!(orbitgraph(&["analyze", "--group", "q8", "--action", "nonsense"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"generators": [[0, 0, 1]]}"#).unwrap();
    assert_eq!(orbitgraph(&["analyze", "--group", bad.to_str().unwrap(), "--action", "inner"]).status.code(), Some(2));
    assert_eq!(orbitgraph(&["verify"]).status.code(), Some(2));
}

#[test]
fn budget_exhaustion_exits_3() {
    let o = orbitgraph(&["--budget", "10", "analyze", "--group", "sl2(5)", "--action", "full_aut"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn refute_sl27_finds_a_clique() {
    let o = orbitgraph(&["--threads", "2", "refute", "--group", "SL(2,7)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("order 8"));
}

#[test]
fn failed_assertions_exit_1() {
    // no structural case covers SL(2,9) under its full automorphism group
    assert_eq!(orbitgraph(&["analyze", "--group", "sl2(9)", "--action", "full_aut"]).status.code(), Some(1));
    assert_eq!(orbitgraph(&["refute", "--group", "sl2(9)"]).status.code(), Some(1));
}

#[test]
fn verify_all_passes() {
    let o = orbitgraph(&["verify", "--all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("all checks passed"));
}
