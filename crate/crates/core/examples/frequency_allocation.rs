//! Frequency allocation on a 4x4 chip with one square bus, compared with the
//! five-frequency pattern.
//!
//! `cargo run --release --example frequency_allocation`

use archflow::bus::Square;
use archflow::freq::{allocate_traced, bfs_order, center_qubit};
use archflow::{connectivity, five_frequency_plan, simulate_yield, AllocParams, BusPlan, Coord, Placement, QubitId, RuleSet, SimParams};

fn main() -> archflow::Result<()> {
    // row-major 4x4, q0 at the top left
    let placement = Placement::from_pairs((0..16).map(|i| (QubitId(i), Coord::new(i as i32 % 4, 3 - i as i32 / 4))))?;
    let bus = Square::at(Coord::new(1, 1), &placement);
    let buses = BusPlan::with_squares(&placement, vec![bus]);
    let g = connectivity(&placement, &buses)?;
    let rules = RuleSet::default();
    let sim = SimParams { sigma_mhz: 30.0, trials: 10_000, seed: 7 };

    println!("center: {}", center_qubit(&placement).unwrap());
    println!("visit order: {:?}", bfs_order(&placement, &g));

    let (plan, steps) = allocate_traced(&placement, &g, &AllocParams::from_sim(&sim), &rules);
    for s in &steps {
        if s.scores.is_empty() {
            println!("q{:<2} center -> {:.0} MHz", s.qubit, s.chosen_mhz);
            continue;
        }
        let best = s.scores.iter().map(|&(_, n)| n).max().unwrap_or(0);
        println!("q{:<2} region {:?} -> {:.0} MHz ({} local successes)", s.qubit, s.region, s.chosen_mhz, best);
    }

    let five = five_frequency_plan(&placement);
    let ours = simulate_yield(&plan.freqs_mhz, &g, &sim, &rules);
    let base = simulate_yield(&five.freqs_mhz, &g, &sim, &rules);
    println!("\nallocated yield {:.4}, five-frequency yield {:.4}", ours.rate, base.rate);
    for row in 0..4 {
        let cells: Vec<String> = (0..4).map(|c| format!("{:.3}", plan.ghz(row * 4 + c))).collect();
        println!("  {}", cells.join("  "));
    }
    Ok(())
}
