//! Step-by-step placement of a benchmark on the lattice.
//!
//! `cargo run --example layout_walkthrough [file.qasm]`

use archflow::{parse_qasm_named, place_qubits, Coord, CouplingProfile, Placement, QubitId};

fn render(p: &Placement) -> String {
    let Some((lo, hi)) = p.bounding_box() else {
        return String::new();
    };
    let mut out = String::new();
    for y in (lo.y..=hi.y).rev() {
        for x in lo.x..=hi.x {
            match p.occupant(Coord::new(x, y)) {
                Some(q) => out.push_str(&format!("{:>4}", q.to_string())),
                None => out.push_str("   ."),
            }
        }
        out.push('\n');
    }
    out
}

fn main() -> archflow::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/benchmarks/uccsd_8.qasm").to_string());
    let circuit = parse_qasm_named(&std::fs::read_to_string(&path)?, "bench")?;
    let profile = CouplingProfile::of(&circuit);
    let placement = place_qubits(&profile.degrees, &profile.matrix);

    let mut partial = Placement::new();
    for (step, &q) in placement.placement_order().iter().enumerate() {
        let at = placement.position(q).unwrap();
        partial.place(q, at)?;
        println!("step {step}: {q} (degree {}) -> ({}, {})", profile.degrees.degree_of(q), at.x, at.y);
    }
    println!("\n{}", render(&placement));

    let cost: u64 = (0..circuit.num_qubits)
        .flat_map(|a| (a + 1..circuit.num_qubits).map(move |b| (a, b)))
        .map(|(a, b)| {
            let (pa, pb) = (placement.position(QubitId(a)).unwrap(), placement.position(QubitId(b)).unwrap());
            profile.matrix.get(a, b) * pa.manhattan(pb)
        })
        .sum();
    println!("total strength x distance: {cost}");
    Ok(())
}
