//! Greedy square-bus selection with its filtered weights, against random and
//! maximal bus sets on the same layout.
//!
//! `cargo run --example bus_selection [file.qasm]`

use archflow::bus::{cross_weight, enumerate_squares, max_buses, random_buses, select_buses_traced};
use archflow::mapper::{initial_mapping, route};
use archflow::{connectivity, parse_qasm_named, place_qubits, BusPlan, Circuit, CouplingProfile, Placement};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn post_gates(c: &Circuit, profile: &CouplingProfile, p: &Placement, b: &BusPlan) -> usize {
    let g = connectivity(p, b).unwrap();
    let map = initial_mapping(profile, &g).unwrap();
    route(c, &g, &map).unwrap().post_gate_count
}

fn main() -> archflow::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/benchmarks/arith_15.qasm").to_string());
    let circuit = parse_qasm_named(&std::fs::read_to_string(&path)?, "bench")?;
    let profile = CouplingProfile::of(&circuit);
    let placement = place_qubits(&profile.degrees, &profile.matrix);

    println!("candidate squares (anchor, corners, cross weight):");
    for s in enumerate_squares(&placement) {
        let qs: Vec<String> = s.qubits().iter().map(|q| q.to_string()).collect();
        println!("  ({:>2},{:>2})  [{}]  {}", s.anchor.x, s.anchor.y, qs.join(" "), cross_weight(&s, &profile.matrix));
    }

    let (plan, trace) = select_buses_traced(&placement, &profile.matrix, usize::MAX);
    for (i, step) in trace.iter().enumerate() {
        println!(
            "pick {}: ({},{}) filtered weight {} among {} eligible",
            i + 1,
            step.chosen.x,
            step.chosen.y,
            step.filtered_weight,
            step.eligible.len()
        );
    }

    let k = plan.four_qubit_buses.len();
    println!("\ngreedy, k={k}: {} gates after routing", post_gates(&circuit, &profile, &placement, &plan));
    for seed in 0..5 {
        let rd = random_buses(&placement, k, &mut ChaCha8Rng::seed_from_u64(seed));
        println!("random #{seed}, k={}: {} gates", rd.four_qubit_buses.len(), post_gates(&circuit, &profile, &placement, &rd));
    }
    let all = max_buses(&placement);
    println!("maximal, k={}: {} gates", all.four_qubit_buses.len(), post_gates(&circuit, &profile, &placement, &all));
    Ok(())
}
