//! Monte Carlo yield: a two-qubit sanity check, then every baseline chip.
//!
//! `cargo run --release --example yield_estimate`

use archflow::flow::{baseline_arch, Baseline};
use archflow::{simulate_yield, ConnectivityGraph, RuleSet, SimParams};

fn main() -> archflow::Result<()> {
    let params = SimParams { sigma_mhz: 30.0, trials: 10_000, seed: 1 };

    // f_j - f_k ~ N(0, sigma * sqrt 2); the pair fails when |f_j - f_k| < 17 MHz
    let g = ConnectivityGraph::from_pairs(2, [(0, 1)])?;
    let rule1 = RuleSet::default().only(&[1]);
    let y = simulate_yield(&[5170.0, 5170.0], &g, &params, &rule1);
    println!("two equal qubits, rule 1 only: {:.4} +- {:.4}", y.rate, y.std_error());
    for gap in [0.0, 20.0, 40.0, 80.0, 170.0] {
        let y = simulate_yield(&[5170.0, 5170.0 + gap], &g, &params, &RuleSet::default());
        println!("  gap {gap:>5} MHz, all rules: {:.4}", y.rate);
    }

    println!();
    for b in Baseline::ALL {
        let arch = baseline_arch(b);
        let g = arch.connectivity()?;
        for sigma in [10.0, 20.0, 30.0] {
            let y = simulate_yield(&arch.freqs.freqs_mhz, &g, &SimParams { sigma_mhz: sigma, ..params }, &RuleSet::default());
            println!("({}) {:<11} sigma {sigma:>4} MHz: {:.4}", b.label(), b.name(), y.rate);
        }
    }
    Ok(())
}
