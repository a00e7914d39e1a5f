use std::path::Path;
use std::process::{Command, Output};

use delpezzo_core::Census;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_delpezzo"))
        .args(args)
        .env_remove("DELPEZZO_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const A1: &str = r#"{"p":2,"k":1,"modulus":null,"g2":[0,0,0,1,1,1],"g4":[0,0,0,0,1,0,0,0,1,0,1,0,1,0,1]}"#;

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn count_reports_single_singular_point() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "a1.json", A1);
    let o = run(&["count", "--surface", &f]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("1 points, 1 singular, 0 smooth"), "{}", stdout(&o));

    let o = run(&["--format", "json", "count", "--surface", &f, "--match"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["report"]["n_smooth"], 0);
    assert!(v["matches"].as_array().unwrap().iter().any(|m| m[0] == "2.A1"));
}

#[test]
fn profiles_give_counts_at_q2() {
    let o = run(&["profiles", "--class", "6.3", "--q", "2"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let counts: Vec<&str> = out.lines().skip(2).filter_map(|l| l.split('|').nth(6)).map(str::trim).collect();
    assert_eq!(counts, ["5", "9"]);
}

#[test]
fn classes_of_degree_six() {
    let o = run(&["classes", "--degree", "6"]);
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("| 6.")).count(), 6);
    let o = run(&["--format", "json", "classes", "--degree", "6"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    for row in v.as_array().unwrap() {
        assert_eq!(row["lines"], row["expected_lines"]);
    }
}

#[test]
fn graph_formats() {
    let dot = stdout(&run(&["--format", "dot", "graph", "--class", "7.1"]));
    assert!(dot.starts_with("graph \"7.1\""));
    assert_eq!(dot.matches(" -- ").count(), 2);
    let o = run(&["--format", "json", "graph", "--class", "7.1"]);
    assert!(serde_json::from_slice::<serde_json::Value>(&o.stdout).is_ok());
}

#[test]
fn lattice_counts() {
    let o = run(&["--format", "json", "lattice", "roots", "--n", "4"]);
    let v: Vec<Vec<i64>> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.len(), 20);
    let o = run(&["--format", "json", "lattice", "exceptional", "--n", "6"]);
    let v: Vec<Vec<i64>> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.len(), 27);
}

#[test]
fn quadric_cone_over_f3() {
    let dir = tempfile::tempdir().unwrap();
    // x^2 + y^2 + z^2: a cone over a conic, 1 + q(q + 1) points
    let f = write(dir.path(), "q.txt", "1 0 0 0 1 0 0 1 0 0");
    let o = run(&["quadric", "--file", &f, "--q", "3"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("rank 3"));
    assert!(stdout(&o).contains("13 points"));
}

#[test]
fn conics_have_witnesses() {
    let o = run(&["--format", "json", "conics", "--q", "3"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pencil_size"], 10);
    assert_eq!(v["pairs"].as_array().unwrap().len(), 3);
}

#[test]
fn hunt_writes_readable_census() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("q2.jsonl");
    let o = run(&["--threads", "2", "hunt", "--q", "2", "--prefilter", "--dedup", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let census = Census::from_jsonl(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(census.entries.len(), 9);
    assert!(census.entries.iter().all(|e| e.report.n_smooth == 0));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["graph", "--class", "9.9"]).status.code(), Some(2));
    assert_eq!(run(&["hunt", "--q", "9"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["--format", "dot", "classes", "--degree", "6"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", r#"{"p":2,"k":1,"g2":[0]}"#);
    assert_eq!(run(&["count", "--surface", &bad]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--criterion", "12"]).status.code(), Some(0));
    // Criterion 2 does not hold for class 4.17 as tabulated.
    assert_eq!(run(&["verify", "--criterion", "2"]).status.code(), Some(1));
}
