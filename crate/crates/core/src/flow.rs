//! End-to-end design flow, baseline chips and the yield/performance sweep.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arch::{Architecture, Provenance};
use crate::bus::{max_buses, random_buses, select_buses, BusPlan, Square};
use crate::circuit::{Circuit, QubitId};
use crate::error::{Error, Result};
use crate::freq::{allocate, five_frequency_plan, AllocParams, FrequencyPlan};
use crate::layout::{place_qubits, Coord, Placement};
use crate::mapper::{map_and_route, RouterConfig};
use crate::profile::CouplingProfile;
use crate::yield_sim::{derive_seed, simulate_yield, RuleSet, SimParams, YieldEstimate};

/// Experiment configurations, in CSV sort order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Config {
    #[serde(rename = "ibm")]
    Ibm,
    #[serde(rename = "eff-full")]
    EffFull,
    #[serde(rename = "eff-5-freq")]
    EffFiveFreq,
    #[serde(rename = "eff-rd-bus")]
    EffRdBus,
    #[serde(rename = "eff-layout-only")]
    EffLayoutOnly,
}

impl Config {
    pub const ALL: [Config; 5] = [Config::Ibm, Config::EffFull, Config::EffFiveFreq, Config::EffRdBus, Config::EffLayoutOnly];

    pub fn name(self) -> &'static str {
        match self {
            Config::Ibm => "ibm",
            Config::EffFull => "eff-full",
            Config::EffFiveFreq => "eff-5-freq",
            Config::EffRdBus => "eff-rd-bus",
            Config::EffLayoutOnly => "eff-layout-only",
        }
    }

    /// Parses a comma-separated list; `all` selects every configuration.
    pub fn parse_list(s: &str) -> Result<Vec<Config>> {
        if s.trim() == "all" {
            return Ok(Self::ALL.to_vec());
        }
        let mut out: Vec<Config> = s.split(',').map(|p| p.trim().parse()).collect::<Result<_>>()?;
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl fmt::Display for Config {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Config {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| Error::UnknownConfig(s.to_string()))
    }
}

/// Knobs shared by every stage of the flow.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FlowOptions {
    pub sim: SimParams,
    pub local_trials: usize,
    pub router: RouterConfig,
    /// Random bus designs per bus count in `eff-rd-bus`.
    pub rd_samples: usize,
}

impl Default for FlowOptions {
    fn default() -> Self {
        Self {
            sim: SimParams::default(),
            local_trials: AllocParams::DEFAULT_LOCAL_TRIALS,
            router: RouterConfig::default(),
            rd_samples: 10,
        }
    }
}

impl FlowOptions {
    fn alloc(&self) -> AllocParams {
        AllocParams { sigma_mhz: self.sim.sigma_mhz, local_trials: self.local_trials, seed: self.sim.seed }
    }
}

/// Profile, place, select up to `k` square buses and allocate frequencies.
pub fn run_flow(c: &Circuit, k: usize, opts: &FlowOptions, rules: &RuleSet) -> Result<Architecture> {
    let profile = CouplingProfile::of(c);
    let placement = place_qubits(&profile.degrees, &profile.matrix);
    let buses = select_buses(&placement, &profile.matrix, k);
    let provenance = Provenance { config: Config::EffFull.name().into(), k, seed: opts.sim.seed, source: c.name.clone() };
    with_allocation(placement, buses, opts, rules, provenance)
}

fn with_allocation(
    placement: Placement,
    buses: BusPlan,
    opts: &FlowOptions,
    rules: &RuleSet,
    provenance: Provenance,
) -> Result<Architecture> {
    let mut arch = Architecture { placement, buses, freqs: FrequencyPlan { freqs_mhz: vec![] }, provenance };
    let g = arch.connectivity()?;
    arch.freqs = allocate(&arch.placement, &g, &opts.alloc(), rules);
    Ok(arch)
}

fn with_five_frequencies(placement: Placement, buses: BusPlan, provenance: Provenance) -> Architecture {
    let freqs = five_frequency_plan(&placement);
    Architecture { placement, buses, freqs, provenance }
}

/// The four fixed baseline chips.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Baseline {
    Ibm16,
    Ibm16FourBus,
    Ibm20,
    Ibm20FourBus,
}

impl Baseline {
    /// In legend order (1)..(4).
    pub const ALL: [Baseline; 4] = [Baseline::Ibm16, Baseline::Ibm16FourBus, Baseline::Ibm20, Baseline::Ibm20FourBus];

    pub fn name(self) -> &'static str {
        match self {
            Baseline::Ibm16 => "ibm16",
            Baseline::Ibm16FourBus => "ibm16-4bus",
            Baseline::Ibm20 => "ibm20",
            Baseline::Ibm20FourBus => "ibm20-4bus",
        }
    }

    pub fn label(self) -> usize {
        Self::ALL.iter().position(|b| *b == self).unwrap() + 1
    }

    /// `(columns, rows)` of the lattice.
    fn shape(self) -> (i32, i32) {
        match self {
            Baseline::Ibm16 | Baseline::Ibm16FourBus => (8, 2),
            Baseline::Ibm20 | Baseline::Ibm20FourBus => (5, 4),
        }
    }

    fn four_bus(self) -> bool {
        matches!(self, Baseline::Ibm16FourBus | Baseline::Ibm20FourBus)
    }
}

impl FromStr for Baseline {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|b| b.name() == s).ok_or_else(|| Error::UnknownBaseline(s.to_string()))
    }
}

/// Row-major lattice with a checkerboard of square buses when requested, and
/// five-frequency design frequencies.
pub fn baseline_arch(b: Baseline) -> Architecture {
    let (w, h) = b.shape();
    let placement = Placement::from_pairs(
        (0..h).flat_map(|y| (0..w).map(move |x| (QubitId((y * w + x) as usize), Coord::new(x, y)))),
    )
    .expect("distinct lattice nodes");
    let squares: Vec<Square> = if b.four_bus() {
        (0..h - 1)
            .rev()
            .flat_map(|y| (0..w - 1).map(move |x| Coord::new(x, y)))
            .filter(|a| (a.x + a.y) % 2 == 0)
            .map(|a| Square::at(a, &placement))
            .collect()
    } else {
        Vec::new()
    };
    let buses = BusPlan::with_squares(&placement, squares);
    let provenance = Provenance { config: Config::Ibm.name().into(), k: buses.four_qubit_buses.len(), seed: 0, source: b.name().into() };
    with_five_frequencies(placement, buses, provenance)
}

pub fn baseline_by_name(name: &str) -> Result<Architecture> {
    Ok(baseline_arch(name.parse()?))
}

/// One design point of a sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub benchmark: String,
    pub config: Config,
    /// Number of square buses actually placed.
    pub k: usize,
    pub seed: u64,
    #[serde(rename = "yield")]
    pub yield_rate: f64,
    pub post_gates: usize,
    pub perf_norm: f64,
    /// Baseline legend label (1..4) for `ibm` rows; used only to order rows.
    #[serde(skip)]
    pub variant: usize,
    #[serde(skip)]
    pub yield_successes: usize,
    #[serde(skip)]
    pub trials: usize,
}

impl SweepRow {
    pub fn yield_estimate(&self) -> YieldEstimate {
        YieldEstimate::new(self.yield_successes, self.trials)
    }
}

/// Performance evaluation: post-mapping gate count of `c` on `arch`.
pub fn post_mapping_gate_count(c: &Circuit, arch: &Architecture, router: &RouterConfig) -> Result<usize> {
    let g = arch.connectivity()?;
    let profile = CouplingProfile::of(c);
    Ok(map_and_route(c, &profile, &g, router)?.post_gate_count)
}

/// Largest useful square-bus count: greedy selection until no positive-weight
/// square remains.
pub fn auto_k_max(c: &Circuit) -> usize {
    let profile = CouplingProfile::of(c);
    let placement = place_qubits(&profile.degrees, &profile.matrix);
    select_buses(&placement, &profile.matrix, usize::MAX).four_qubit_buses.len()
}

/// One chip to build for a circuit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DesignPoint {
    Baseline(Baseline),
    /// Greedy buses, allocated frequencies.
    Full { k: usize },
    /// Greedy buses, five-frequency plan.
    FiveFreq { k: usize },
    /// `k` random buses drawn with `seed`, allocated frequencies.
    RandomBus { k: usize, seed: u64 },
    /// Flow layout with either no square buses or the most that fit, five-frequency plan.
    LayoutOnly { max: bool },
}

impl DesignPoint {
    pub fn config(&self) -> Config {
        match self {
            DesignPoint::Baseline(_) => Config::Ibm,
            DesignPoint::Full { .. } => Config::EffFull,
            DesignPoint::FiveFreq { .. } => Config::EffFiveFreq,
            DesignPoint::RandomBus { .. } => Config::EffRdBus,
            DesignPoint::LayoutOnly { .. } => Config::EffLayoutOnly,
        }
    }
}

/// Builds the architecture for one design point. `layout` is the flow
/// placement of `c`; pass `None` to compute it.
pub fn build_design(
    c: &Circuit,
    point: DesignPoint,
    layout: Option<(&CouplingProfile, &Placement)>,
    opts: &FlowOptions,
    rules: &RuleSet,
) -> Result<Architecture> {
    if let DesignPoint::Baseline(b) = point {
        return Ok(baseline_arch(b));
    }
    let owned;
    let (profile, placement) = match layout {
        Some(l) => l,
        None => {
            let profile = CouplingProfile::of(c);
            let placement = place_qubits(&profile.degrees, &profile.matrix);
            owned = (profile, placement);
            (&owned.0, &owned.1)
        }
    };
    let prov = |k: usize, seed: u64| Provenance { config: point.config().name().into(), k, seed, source: c.name.clone() };
    match point {
        DesignPoint::Baseline(_) => unreachable!(),
        DesignPoint::Full { k } => {
            let buses = select_buses(placement, &profile.matrix, k);
            with_allocation(placement.clone(), buses, opts, rules, prov(k, opts.sim.seed))
        }
        DesignPoint::FiveFreq { k } => {
            let buses = select_buses(placement, &profile.matrix, k);
            Ok(with_five_frequencies(placement.clone(), buses, prov(k, opts.sim.seed)))
        }
        DesignPoint::RandomBus { k, seed } => {
            let buses = random_buses(placement, k, &mut ChaCha8Rng::seed_from_u64(seed));
            with_allocation(placement.clone(), buses, opts, rules, prov(k, seed))
        }
        DesignPoint::LayoutOnly { max } => {
            let buses = if max { max_buses(placement) } else { BusPlan::with_squares(placement, vec![]) };
            let k = buses.four_qubit_buses.len();
            Ok(with_five_frequencies(placement.clone(), buses, prov(k, opts.sim.seed)))
        }
    }
}

/// Design points a sweep visits for `configs`.
pub fn sweep_points(configs: &[Config], k_max: usize, opts: &FlowOptions) -> Vec<DesignPoint> {
    let mut points = Vec::new();
    for &cfg in configs {
        match cfg {
            Config::Ibm => points.extend(Baseline::ALL.map(DesignPoint::Baseline)),
            Config::EffFull => points.extend((0..=k_max).map(|k| DesignPoint::Full { k })),
            Config::EffFiveFreq => points.extend((0..=k_max).map(|k| DesignPoint::FiveFreq { k })),
            Config::EffRdBus => {
                for k in 1..=k_max {
                    for s in 0..opts.rd_samples {
                        let seed = derive_seed(opts.sim.seed, ((k as u64) << 32) | s as u64);
                        points.push(DesignPoint::RandomBus { k, seed });
                    }
                }
            }
            Config::EffLayoutOnly => {
                points.extend([DesignPoint::LayoutOnly { max: false }, DesignPoint::LayoutOnly { max: true }])
            }
        }
    }
    points
}

/// Builds every requested design point for `c` and evaluates yield and
/// post-mapping gate count. `k_max = None` picks [`auto_k_max`]. Rows come
/// back sorted by (config, k, seed, variant) with `perf_norm` filled in.
pub fn pareto_sweep(
    c: &Circuit,
    configs: &[Config],
    k_max: Option<usize>,
    opts: &FlowOptions,
    rules: &RuleSet,
) -> Result<Vec<SweepRow>> {
    let profile = CouplingProfile::of(c);
    let placement = place_qubits(&profile.degrees, &profile.matrix);
    let k_max = k_max.unwrap_or_else(|| auto_k_max(c));

    let evaluate = |point: &DesignPoint| -> Result<SweepRow> {
        let arch = build_design(c, *point, Some((&profile, &placement)), opts, rules)?;
        let (seed, variant) = match *point {
            DesignPoint::Baseline(b) => (opts.sim.seed, b.label()),
            DesignPoint::RandomBus { seed, .. } => (seed, 0),
            _ => (opts.sim.seed, 0),
        };
        let g = arch.connectivity()?;
        let y = simulate_yield(&arch.freqs.freqs_mhz, &g, &opts.sim, rules);
        let post_gates = post_mapping_gate_count(c, &arch, &opts.router)?;
        Ok(SweepRow {
            benchmark: c.name.clone(),
            config: point.config(),
            k: arch.num_four_qubit_buses(),
            seed,
            yield_rate: y.rate,
            post_gates,
            perf_norm: 0.0,
            variant,
            yield_successes: y.successes,
            trials: y.trials,
        })
    };

    let points = sweep_points(configs, k_max, opts);
    let mut rows: Vec<SweepRow> = points.par_iter().map(evaluate).collect::<Result<_>>()?;
    sort_rows(&mut rows);
    normalize_perf(&mut rows);
    Ok(rows)
}

/// Sorts by (benchmark, config, k, seed), baselines by legend label.
pub fn sort_rows(rows: &mut [SweepRow]) {
    rows.sort_by(|a, b| {
        (&a.benchmark, a.config, a.k, a.seed, a.variant).cmp(&(&b.benchmark, b.config, b.k, b.seed, b.variant))
    });
}

/// `perf_norm = best post-mapping gate count / own count`, per benchmark.
pub fn normalize_perf(rows: &mut [SweepRow]) {
    let mut best: std::collections::BTreeMap<String, usize> = std::collections::BTreeMap::new();
    for r in rows.iter() {
        let e = best.entry(r.benchmark.clone()).or_insert(usize::MAX);
        *e = (*e).min(r.post_gates);
    }
    for r in rows.iter_mut() {
        r.perf_norm = best[&r.benchmark] as f64 / r.post_gates as f64;
    }
}

/// Writes rows as `benchmark,config,k,seed,yield,post_gates,perf_norm`.
pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["benchmark", "config", "k", "seed", "yield", "post_gates", "perf_norm"])?;
    for r in rows {
        w.write_record([
            r.benchmark.clone(),
            r.config.name().to_string(),
            r.k.to_string(),
            r.seed.to_string(),
            format!("{:.6}", r.yield_rate),
            r.post_gates.to_string(),
            format!("{:.6}", r.perf_norm),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn baseline_bus_counts() {
        let b = baseline_arch(Baseline::Ibm16);
        assert_eq!(b.num_qubits(), 16);
        assert_eq!(b.buses.two_qubit_buses.len(), 8 + 7 * 2);
        assert_eq!(baseline_arch(Baseline::Ibm16FourBus).num_four_qubit_buses(), 4);
        assert_eq!(baseline_arch(Baseline::Ibm20).buses.two_qubit_buses.len(), 5 * 3 + 4 * 4);
        let b20 = baseline_arch(Baseline::Ibm20FourBus);
        assert_eq!(b20.num_four_qubit_buses(), 6);
        assert!(b20.buses.satisfies_prohibited_condition());
    }

    #[test]
    fn unknown_baseline() {
        assert!(matches!(baseline_by_name("ibm27"), Err(Error::UnknownBaseline(_))));
    }

    #[test]
    fn config_names_round_trip() {
        for c in Config::ALL {
            assert_eq!(c.name().parse::<Config>().unwrap(), c);
        }
        assert_eq!(Config::parse_list("all").unwrap().len(), 5);
        assert_eq!(Config::parse_list("eff-full,ibm").unwrap(), vec![Config::Ibm, Config::EffFull]);
        assert!(Config::parse_list("eff-best").is_err());
    }
}
