//! Full design sweep of one benchmark, printed as CSV.
//!
//! `cargo run --release --example pareto_sweep [file.qasm] [trials]`

use archflow::flow::{pareto_sweep, write_csv, Config, FlowOptions};
use archflow::{parse_qasm_named, RuleSet, SimParams};

fn main() -> archflow::Result<()> {
    let mut args = std::env::args().skip(1);
    let path = args
        .next()
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/benchmarks/sym_7.qasm").to_string());
    let trials = args.next().and_then(|t| t.parse().ok()).unwrap_or(2_000);
    let name = std::path::Path::new(&path).file_stem().unwrap().to_string_lossy().into_owned();
    let circuit = parse_qasm_named(&std::fs::read_to_string(&path)?, &name)?;

    let opts = FlowOptions { sim: SimParams { trials, ..SimParams::default() }, local_trials: 500, ..FlowOptions::default() };
    let rows = pareto_sweep(&circuit, &Config::ALL, None, &opts, &RuleSet::default())?;
    write_csv(&rows, std::io::stdout())?;

    // the designs no other design beats on both axes
    let front: Vec<_> = rows
        .iter()
        .filter(|r| !rows.iter().any(|o| o.yield_rate > r.yield_rate && o.perf_norm >= r.perf_norm
            || o.yield_rate >= r.yield_rate && o.perf_norm > r.perf_norm))
        .collect();
    eprintln!("\nnon-dominated:");
    for r in front {
        eprintln!("  {:<16} k={} yield {:.4} perf {:.3}", r.config.name(), r.k, r.yield_rate, r.perf_norm);
    }
    Ok(())
}
