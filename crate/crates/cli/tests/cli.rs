use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_clique-extremal"));
    cmd.env_remove("CLIQUE_EXTREMAL_MAX_N");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8")
}

/// Scratch directory unique to one test.
fn scratch(name: &str) -> PathBuf {
    let dir =
        std::env::temp_dir().join(format!("clique-extremal-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn construct(dir: &Path, file: &str, args: &[&str]) -> String {
    let out = run(&[&["construct"], args].concat());
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let path = dir.join(file);
    std::fs::write(&path, &out.stdout).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn count_both_methods_agree_on_graph6_input() {
    let dir = scratch("count");
    let g = construct(
        &dir,
        "m.g6",
        &["--family", "matching", "--n", "10", "--format", "graph6"],
    );
    let out = run(&["count", "--input", &g, "--method", "both", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["count_including_empty"], "243");
    assert_eq!(v["clique_number"], 5);
    assert_eq!(v["agree"], true);
}

#[test]
fn count_reads_stdin_edge_list() {
    let mut child = bin()
        .args(["count", "--input", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    use std::io::Write;
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"3 3\n0 1\n1 2\n0 2\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(stdout(&out).contains("cliques (including empty): 8"));
}

#[test]
fn refined_bounds_json_has_constant_and_maximizer() {
    let out = run(&["bounds", "--mode", "refined", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let c = v["constant"].as_f64().unwrap();
    assert!((1.70..=1.8165).contains(&c), "{c}");
    assert!(v["C"].as_f64().unwrap() > 1.0);
    assert!(v["D"].as_f64().unwrap() >= 1.0);
}

#[test]
fn boundt_mode_reports_the_dense_bound() {
    let out = run(&[
        "bounds",
        "--mode",
        "boundt",
        "--params",
        "12,6,12,2",
        "--json",
    ]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["log2_bound"].as_f64().unwrap() - 11.3146).abs() < 1e-4);
}

#[test]
fn embed_then_verify_round_trip_and_tampering() {
    let dir = scratch("embed");
    let g = construct(&dir, "m8.txt", &["--family", "matching", "--n", "8"]);
    let cert = dir.join("cert.json");
    let out = run(&[
        "embed",
        "--input",
        &g,
        "--kind",
        "immersion",
        "--terminals",
        "0,1,2,3",
        "--output",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let ok = run(&[
        "verify",
        "--input",
        &g,
        "--certificate",
        cert.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(ok.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(report["valid"], true);

    // route the missing pair (0, 1) directly: not an edge
    let mut c: Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    for p in c["paths"].as_array_mut().unwrap() {
        if p["ends"] == serde_json::json!([0, 1]) {
            p["route"] = serde_json::json!([0, 1]);
        }
    }
    std::fs::write(&cert, c.to_string()).unwrap();
    let bad = run(&[
        "verify",
        "--input",
        &g,
        "--certificate",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("invalid"));
}

#[test]
fn embed_reports_unmet_hypothesis_as_failure() {
    let dir = scratch("hyp");
    let g = construct(&dir, "m8.txt", &["--family", "matching", "--n", "8"]);
    let out = run(&[
        "embed",
        "--input",
        &g,
        "--kind",
        "subdivision",
        "--terminals",
        "0,1,2,3,4",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn sigma_guard_override_exits_with_guard_code() {
    let dir = scratch("guard");
    let g = construct(&dir, "m8.txt", &["--family", "matching", "--n", "8"]);
    let out = bin()
        .args(["sigma", "--input", &g])
        .env("CLIQUE_EXTREMAL_MAX_N", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let ok = run(&["sigma", "--input", &g, "--json"]);
    let v: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["sigma"], 6);
}

#[test]
fn params_report() {
    let dir = scratch("params");
    let g = construct(
        &dir,
        "s.txt",
        &["--family", "star", "--n", "10", "--t", "5"],
    );
    let out = run(&["params", "--input", &g, "--t", "4", "--json"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["t_param"], 6);
    assert_eq!(v["delta"], 6);
    assert_eq!(v["tset"]["t"], 4);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["count"]).status.code(), Some(2));
    assert_eq!(
        run(&["count", "--input", "/nonexistent/graph"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["bounds", "--mode", "g"]).status.code(), Some(2));
    assert_eq!(
        run(&["construct", "--family", "matching", "--n", "7"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn single_criterion_csv() {
    let out = run(&["verify-paper", "--quick", "--criterion", "2", "--csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("criterion,anchor,check"));
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn sequential_and_parallel_outputs_match() {
    let a = run(&["verify-paper", "--quick", "--criterion", "1", "--json"]);
    let b = run(&[
        "--sequential",
        "--threads",
        "2",
        "verify-paper",
        "--quick",
        "--criterion",
        "1",
        "--json",
    ]);
    assert_eq!(a.stdout, b.stdout);
}
