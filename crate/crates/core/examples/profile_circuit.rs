//! Coupling profile of a small program: strength matrix and degree list.
//!
//! `cargo run --example profile_circuit [file.qasm]`

use archflow::{parse_qasm_named, CouplingProfile};

const PROGRAM: &str = r#"
OPENQASM 2.0;
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

fn main() -> archflow::Result<()> {
    let (name, text) = match std::env::args().nth(1) {
        Some(path) => (path.clone(), std::fs::read_to_string(path)?),
        None => ("inline".to_string(), PROGRAM.to_string()),
    };
    let circuit = parse_qasm_named(&text, &name)?;
    let profile = CouplingProfile::of(&circuit);

    println!("{} qubits, {} gates", circuit.num_qubits, circuit.gates.len());
    println!("\ncoupling strength matrix:");
    profile.matrix.write_csv(std::io::stdout())?;
    println!("\ndegree list:");
    for (q, d) in &profile.degrees.entries {
        println!("  {q:>4}  {d}");
    }
    Ok(())
}
