mod common;

use std::path::Path;
use std::process::{Command, Output};

use common::*;

fn flow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flow")).args(args).output().expect("flow runs")
}

fn ok(args: &[&str]) -> String {
    let out = flow(args);
    assert!(out.status.success(), "flow {args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn bench(name: &str) -> String {
    benchmark_dir().join(format!("{name}.qasm")).display().to_string()
}

fn sweep(out: &Path, threads: &str) -> Vec<u8> {
    let (a, b) = (bench("sym_7"), bench("ising_10"));
    ok(&[
        "sweep", "--qasm", &a, "--qasm", &b, "--configs", "all", "--k-max", "2", "--rd-samples", "3", "--trials", "600",
        "--local-trials", "150", "--seed", "5", "--threads", threads, "--out", out.to_str().unwrap(),
    ]);
    std::fs::read(out).unwrap()
}

#[test]
fn run_then_yield() {
    let dir = tempfile::tempdir().unwrap();
    let arch = dir.path().join("arch.json");
    ok(&["run", "--qasm", &bench("sym_7"), "--k", "1", "--trials", "500", "--local-trials", "100", "--out", arch.to_str().unwrap()]);
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&arch).unwrap()).unwrap();
    assert_eq!(json["qubits"].as_array().unwrap().len(), 7);
    let line = ok(&["yield", "--arch", arch.to_str().unwrap(), "--trials", "500"]);
    assert!(line.starts_with("yield "), "{line}");
    let rate: f64 = line.split_whitespace().nth(1).unwrap().parse().unwrap();
    assert!((0.0..=1.0).contains(&rate));
}

#[test]
fn baseline_run() {
    let out = ok(&["run", "--config", "ibm", "--baseline", "ibm20-4bus"]);
    let json: serde_json::Value = serde_json::from_str(&out).unwrap();
    let squares = json["buses"].as_array().unwrap().iter().filter(|b| b["kind"] == "bus4").count();
    assert_eq!(squares, 6);
}

#[test]
fn profile_prints_degrees_and_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m.csv");
    let out = ok(&["profile", "--qasm", &bench("ising_10"), "--matrix", m.to_str().unwrap()]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 10);
    assert!(lines.iter().all(|l| l.starts_with('q')));
    let csv = std::fs::read_to_string(&m).unwrap();
    assert!(csv.lines().count() >= 10);
}

#[test]
fn sweep_is_byte_identical_across_runs_and_threads() {
    let dir = tempfile::tempdir().unwrap();
    let one = sweep(&dir.path().join("a.csv"), "1");
    let again = sweep(&dir.path().join("b.csv"), "1");
    let four = sweep(&dir.path().join("c.csv"), "4");
    assert_eq!(one, again);
    assert_eq!(one, four);
    let text = String::from_utf8(one).unwrap();
    assert!(text.starts_with("benchmark,config,k,seed,yield,post_gates,perf_norm\n"));
    assert_eq!(text.lines().filter(|l| l.contains(",ibm,")).count(), 8);
}

#[test]
fn bad_arguments_fail_cleanly() {
    let out = flow(&["sweep", "--qasm", &bench("sym_7"), "--configs", "eff-best"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("eff-best"));

    let out = flow(&["run", "--config", "eff-full"]);
    assert!(!out.status.success());

    let out = flow(&["profile", "--qasm", "/nonexistent.qasm"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("flow: "));
}
