//! Routes a benchmark onto its own flow architecture and onto the baselines.
//!
//! `cargo run --release --example routing [file.qasm]`

use archflow::flow::{baseline_arch, Baseline};
use archflow::mapper::RoutedOp;
use archflow::{initial_mapping, parse_qasm_named, place_qubits, route, select_buses, connectivity, CouplingProfile};

fn main() -> archflow::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/benchmarks/adder_10.qasm").to_string());
    let circuit = parse_qasm_named(&std::fs::read_to_string(&path)?, "bench")?;
    let profile = CouplingProfile::of(&circuit);
    let placement = place_qubits(&profile.degrees, &profile.matrix);

    for k in 0..=2 {
        let g = connectivity(&placement, &select_buses(&placement, &profile.matrix, k))?;
        let map = initial_mapping(&profile, &g)?;
        let r = route(&circuit, &g, &map)?;
        println!("flow k={k}: {} swaps, {} gates", r.inserted_swaps, r.post_gate_count);
        if k == 0 {
            let swaps: Vec<String> = r
                .ops
                .iter()
                .filter_map(|op| match op {
                    RoutedOp::Swap(a, b) => Some(format!("({a},{b})")),
                    _ => None,
                })
                .take(8)
                .collect();
            println!("  first swaps: {}", swaps.join(" "));
        }
    }
    for b in Baseline::ALL {
        let g = baseline_arch(b).connectivity()?;
        let r = route(&circuit, &g, &initial_mapping(&profile, &g)?)?;
        println!("{:<11}: {} swaps, {} gates", b.name(), r.inserted_swaps, r.post_gate_count);
    }
    Ok(())
}
