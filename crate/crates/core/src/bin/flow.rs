use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use archflow::flow::{self, build_design, write_csv, Baseline, Config, DesignPoint, FlowOptions};
use archflow::{parse_qasm_named, Architecture, Circuit, CouplingProfile, Error, Result, RuleSet, SimParams};

#[derive(Parser)]
#[command(name = "flow", version, about = "Design and evaluate application-specific superconducting chips")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(clap::Args)]
struct SimArgs {
    #[arg(long, default_value_t = 30.0)]
    sigma_mhz: f64,
    #[arg(long, default_value_t = 10_000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Collision rule set (JSON); defaults to the built-in rules.
    #[arg(long)]
    rules: Option<PathBuf>,
}

impl SimArgs {
    fn params(&self) -> SimParams {
        SimParams { sigma_mhz: self.sigma_mhz, trials: self.trials, seed: self.seed }
    }

    fn rules(&self) -> Result<RuleSet> {
        match &self.rules {
            Some(p) => Ok(RuleSet::from_json(&fs::read_to_string(p)?)?),
            None => Ok(RuleSet::default()),
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Build one architecture and write it as JSON.
    Run {
        #[arg(long)]
        qasm: Option<PathBuf>,
        #[arg(long, default_value = "eff-full")]
        config: Config,
        /// Square-bus budget (eff-full, eff-5-freq, eff-rd-bus); for
        /// eff-layout-only any k > 0 means "as many as fit".
        #[arg(long, default_value_t = 0)]
        k: usize,
        /// Baseline chip for `--config ibm`.
        #[arg(long, default_value = "ibm16")]
        baseline: String,
        #[command(flatten)]
        sim: SimArgs,
        #[arg(long)]
        local_trials: Option<usize>,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep configurations and bus counts, writing one CSV row per design.
    Sweep {
        #[arg(long, required = true)]
        qasm: Vec<PathBuf>,
        #[arg(long, default_value = "all")]
        configs: String,
        /// `auto` or a number.
        #[arg(long, default_value = "auto")]
        k_max: String,
        #[arg(long, default_value_t = 10)]
        rd_samples: usize,
        #[arg(long)]
        local_trials: Option<usize>,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        threads: usize,
        #[command(flatten)]
        sim: SimArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo yield of an architecture file.
    Yield {
        #[arg(long)]
        arch: PathBuf,
        #[command(flatten)]
        sim: SimArgs,
    },
    /// Print the coupling degree list of a program.
    Profile {
        #[arg(long)]
        qasm: PathBuf,
        /// Also write the coupling strength matrix as CSV.
        #[arg(long)]
        matrix: Option<PathBuf>,
    },
}

fn load_circuit(path: &Path) -> Result<Circuit> {
    let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("circuit");
    Ok(parse_qasm_named(&fs::read_to_string(path)?, name)?)
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn options(sim: &SimArgs, local_trials: Option<usize>, rd_samples: usize) -> FlowOptions {
    let mut opts = FlowOptions { sim: sim.params(), rd_samples, ..FlowOptions::default() };
    if let Some(t) = local_trials {
        opts.local_trials = t;
    }
    opts
}

fn run(cli: Cli) -> Result<()> {
    match cli.cmd {
        Cmd::Run { qasm, config, k, baseline, sim, local_trials, out } => {
            let opts = options(&sim, local_trials, 1);
            let rules = sim.rules()?;
            let arch = if config == Config::Ibm {
                flow::baseline_by_name(&baseline)?
            } else {
                let path = qasm.ok_or_else(|| Error::Usage("--qasm is required for this config".into()))?;
                let c = load_circuit(&path)?;
                let point = match config {
                    Config::EffFull => DesignPoint::Full { k },
                    Config::EffFiveFreq => DesignPoint::FiveFreq { k },
                    Config::EffRdBus => DesignPoint::RandomBus { k, seed: sim.seed },
                    Config::EffLayoutOnly => DesignPoint::LayoutOnly { max: k > 0 },
                    Config::Ibm => DesignPoint::Baseline(baseline.parse::<Baseline>()?),
                };
                build_design(&c, point, None, &opts, &rules)?
            };
            let mut w = output(out.as_deref())?;
            writeln!(w, "{}", arch.to_json())?;
            w.flush()?;
        }
        Cmd::Sweep { qasm, configs, k_max, rd_samples, local_trials, threads, sim, out } => {
            let configs = Config::parse_list(&configs)?;
            let k_max = match k_max.as_str() {
                "auto" => None,
                n => Some(n.parse().map_err(|_| Error::Usage(format!("bad --k-max {n:?}")))?),
            };
            let opts = options(&sim, local_trials, rd_samples);
            let rules = sim.rules()?;
            let circuits = qasm.iter().map(|p| load_circuit(p)).collect::<Result<Vec<_>>>()?;
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool");
            let mut rows = Vec::new();
            for c in &circuits {
                rows.extend(pool.install(|| flow::pareto_sweep(c, &configs, k_max, &opts, &rules))?);
            }
            flow::sort_rows(&mut rows);
            write_csv(&rows, output(out.as_deref())?)?;
        }
        Cmd::Yield { arch, sim } => {
            let a = Architecture::from_json(&fs::read_to_string(&arch)?)?;
            let g = a.connectivity()?;
            let y = archflow::simulate_yield(&a.freqs.freqs_mhz, &g, &sim.params(), &sim.rules()?);
            println!("yield {:.4} ({}/{}, se {:.4})", y.rate, y.successes, y.trials, y.std_error());
        }
        Cmd::Profile { qasm, matrix } => {
            let c = load_circuit(&qasm)?;
            let profile = CouplingProfile::of(&c);
            let mut out = io::stdout().lock();
            for (q, d) in &profile.degrees.entries {
                writeln!(out, "{q} {d}")?;
            }
            if let Some(p) = matrix {
                profile.matrix.write_csv(File::create(p)?)?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Error::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("flow: {e}");
            ExitCode::FAILURE
        }
    }
}
