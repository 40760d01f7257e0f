//! The four fixed baseline chips, as lattice pictures and as architecture JSON.
//!
//! `cargo run --example baselines [name]`

use archflow::flow::{baseline_arch, baseline_by_name, Baseline};
use archflow::Coord;

fn main() -> archflow::Result<()> {
    if let Some(name) = std::env::args().nth(1) {
        println!("{}", baseline_by_name(&name)?.to_json());
        return Ok(());
    }
    for b in Baseline::ALL {
        let arch = baseline_arch(b);
        let squares: Vec<Coord> = arch.buses.four_qubit_buses.iter().map(|s| s.anchor).collect();
        println!(
            "({}) {}: {} qubits, {} two-qubit buses, {} four-qubit buses at {:?}",
            b.label(),
            b.name(),
            arch.num_qubits(),
            arch.buses.two_qubit_buses.len(),
            squares.len(),
            squares.iter().map(|c| (c.x, c.y)).collect::<Vec<_>>()
        );
        let (lo, hi) = arch.placement.bounding_box().unwrap();
        for y in (lo.y..=hi.y).rev() {
            let row: Vec<String> = (lo.x..=hi.x)
                .map(|x| {
                    let q = arch.placement.occupant(Coord::new(x, y)).unwrap();
                    format!("{:.4}", arch.freqs.ghz(q.0))
                })
                .collect();
            println!("  {}", row.join(" "));
        }
    }
    Ok(())
}
