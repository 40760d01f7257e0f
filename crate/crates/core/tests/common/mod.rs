#![allow(dead_code)]

use std::path::PathBuf;

use archflow::{parse_qasm_named, Circuit, Coord, Placement, QubitId};

/// Five-qubit profiling example: q0-q4 coupled twice, every other edge once.
pub const FIVE_QUBIT_QASM: &str = r#"OPENQASM 2.0;
include "qelib1.inc";
qreg q[5];
creg c[5];
h q[4];
cx q[0],q[4];
cx q[1],q[4];
cx q[0],q[1];
cx q[2],q[4];
cx q[4],q[3];
cx q[4],q[0];
measure q[0] -> c[0];
measure q[1] -> c[1];
measure q[2] -> c[2];
measure q[3] -> c[3];
measure q[4] -> c[4];
"#;

pub fn five_qubit() -> Circuit {
    parse_qasm_named(FIVE_QUBIT_QASM, "five_qubit").unwrap()
}

pub fn benchmark_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("benchmarks")
}

pub const BENCHMARKS: [&str; 6] = ["adder_10", "arith_15", "ising_10", "qft_8", "sym_7", "uccsd_8"];

pub fn benchmark(name: &str) -> Circuit {
    let text = std::fs::read_to_string(benchmark_dir().join(format!("{name}.qasm"))).unwrap();
    parse_qasm_named(&text, name).unwrap()
}

pub fn benchmarks() -> Vec<Circuit> {
    BENCHMARKS.iter().map(|b| benchmark(b)).collect()
}

/// 4x4 chip numbered row-major from the top-left corner.
pub fn grid4x4() -> Placement {
    Placement::from_pairs((0..16).map(|i| (QubitId(i), Coord::new(i as i32 % 4, 3 - i as i32 / 4)))).unwrap()
}
