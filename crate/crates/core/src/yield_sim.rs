//! Monte Carlo fabrication yield under the frequency-collision rules.
//!
//! A trial perturbs every design frequency by an independent `N(0, sigma)`
//! draw and fails if any rule fires on any connected pair or on any two
//! qubits sharing a neighbor. Trial `t` always draws from ChaCha8 stream `t`
//! of the run seed, so estimates do not depend on thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bus::ConnectivityGraph;
use crate::error::RuleSetError;

const DEFAULT_RULES: &str = include_str!("../data/collision_rules.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    Pair,
    Triple,
}

/// Coefficients of `fj*f_j + fk*f_k + fi*f_i + delta*δ`, frequencies in MHz.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Coefficients {
    pub fj: f64,
    pub fk: f64,
    #[serde(default)]
    pub fi: f64,
    #[serde(default)]
    pub delta: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// Collides when `|expr| < threshold_mhz`.
    NearZero,
    /// Collides when `expr > 0`.
    StrictlyPositive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CollisionRule {
    pub id: u32,
    pub scope: Scope,
    pub coeff: Coefficients,
    pub relation: Relation,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threshold_mhz: Option<f64>,
}

impl CollisionRule {
    #[inline]
    fn fires(&self, expr: f64) -> bool {
        match self.relation {
            Relation::NearZero => expr.abs() < self.threshold_mhz.unwrap_or(0.0),
            Relation::StrictlyPositive => expr > 0.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RuleSet {
    pub delta_mhz: f64,
    pub rules: Vec<CollisionRule>,
}

impl Default for RuleSet {
    fn default() -> Self {
        Self::from_json(DEFAULT_RULES).expect("bundled rule set is valid")
    }
}

impl RuleSet {
    pub fn from_json(text: &str) -> Result<Self, RuleSetError> {
        let rs: RuleSet = serde_json::from_str(text)?;
        rs.validate()?;
        Ok(rs)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("rule set serializes")
    }

    pub fn validate(&self) -> Result<(), RuleSetError> {
        for r in &self.rules {
            if r.scope == Scope::Pair && r.coeff.fi != 0.0 {
                return Err(RuleSetError::Invalid(format!("pair rule {} has a nonzero f_i coefficient", r.id)));
            }
            match (r.relation, r.threshold_mhz) {
                (Relation::NearZero, None) => {
                    return Err(RuleSetError::Invalid(format!("rule {} needs threshold_mhz", r.id)))
                }
                (Relation::NearZero, Some(t)) if t.is_nan() || t < 0.0 => {
                    return Err(RuleSetError::Invalid(format!("rule {} has a negative threshold", r.id)))
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// Keeps only the rules with the given ids.
    pub fn only(&self, ids: &[u32]) -> Self {
        Self { delta_mhz: self.delta_mhz, rules: self.rules.iter().filter(|r| ids.contains(&r.id)).cloned().collect() }
    }

    fn compile(&self) -> Compiled {
        let mut c = Compiled::default();
        for r in &self.rules {
            let k = CompiledRule { fj: r.coeff.fj, fk: r.coeff.fk, fi: r.coeff.fi, offset: r.coeff.delta * self.delta_mhz, rule: r.clone() };
            match r.scope {
                Scope::Pair => c.pair.push(k),
                Scope::Triple => c.triple.push(k),
            }
        }
        c
    }
}

#[derive(Clone, Debug)]
struct CompiledRule {
    fj: f64,
    fk: f64,
    fi: f64,
    offset: f64,
    rule: CollisionRule,
}

#[derive(Clone, Debug, Default)]
struct Compiled {
    pair: Vec<CompiledRule>,
    triple: Vec<CompiledRule>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimParams {
    pub sigma_mhz: f64,
    pub trials: usize,
    pub seed: u64,
}

impl Default for SimParams {
    fn default() -> Self {
        Self { sigma_mhz: 30.0, trials: 10_000, seed: 0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct YieldEstimate {
    pub rate: f64,
    pub successes: usize,
    pub trials: usize,
}

impl YieldEstimate {
    pub fn new(successes: usize, trials: usize) -> Self {
        Self { rate: successes as f64 / trials as f64, successes, trials }
    }

    /// Binomial standard error of the rate.
    pub fn std_error(&self) -> f64 {
        (self.rate * (1.0 - self.rate) / self.trials as f64).sqrt()
    }
}

/// Rule instances to evaluate for one connectivity graph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Checks {
    /// Every connected pair in both orientations `(j, k)`.
    pub pairs: Vec<(usize, usize)>,
    /// `(j, k, i)` with `k < i`, both neighbors of `j`. Both `k/i` orientations are evaluated.
    pub triples: Vec<(usize, usize, usize)>,
}

impl Checks {
    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty() && self.triples.is_empty()
    }

    /// Checks restricted to qubits in `keep`.
    pub fn restricted(&self, keep: &[bool]) -> Checks {
        Checks {
            pairs: self.pairs.iter().copied().filter(|&(j, k)| keep[j] && keep[k]).collect(),
            triples: self.triples.iter().copied().filter(|&(j, k, i)| keep[j] && keep[k] && keep[i]).collect(),
        }
    }
}

pub fn enumerate_checks(g: &ConnectivityGraph) -> Checks {
    let mut checks = Checks::default();
    for (a, b) in g.pairs() {
        checks.pairs.push((a, b));
        checks.pairs.push((b, a));
    }
    for j in 0..g.num_qubits() {
        let nb = g.neighbors(j);
        for x in 0..nb.len() {
            for y in (x + 1)..nb.len() {
                checks.triples.push((j, nb[x], nb[y]));
            }
        }
    }
    checks
}

/// Adds one `N(0, sigma)` draw per qubit. Frequencies in MHz.
pub fn sample_fabrication<R: Rng + ?Sized>(design_mhz: &[f64], sigma_mhz: f64, rng: &mut R) -> Vec<f64> {
    design_mhz
        .iter()
        .map(|f| {
            let z: f64 = rng.sample(StandardNormal);
            f + sigma_mhz * z
        })
        .collect()
}

/// True if any rule fires on any check instance.
pub fn check_collision(postfab_mhz: &[f64], checks: &Checks, rules: &RuleSet) -> bool {
    collides(postfab_mhz, checks, &rules.compile())
}

#[inline]
fn collides(f: &[f64], checks: &Checks, rules: &Compiled) -> bool {
    for &(j, k) in &checks.pairs {
        for r in &rules.pair {
            if r.rule.fires(r.fj * f[j] + r.fk * f[k] + r.offset) {
                return true;
            }
        }
    }
    for &(j, a, b) in &checks.triples {
        for r in &rules.triple {
            let base = r.fj * f[j] + r.offset;
            if r.rule.fires(base + r.fk * f[a] + r.fi * f[b]) || r.rule.fires(base + r.fk * f[b] + r.fi * f[a]) {
                return true;
            }
        }
    }
    false
}

/// Per-trial fabrication noise for `n` qubits, shared across evaluations.
#[derive(Clone, Debug)]
pub struct NoiseBank {
    n: usize,
    trials: usize,
    data: Vec<f64>,
}

impl NoiseBank {
    pub fn generate(n: usize, sigma_mhz: f64, trials: usize, seed: u64) -> Self {
        let base = ChaCha8Rng::seed_from_u64(seed);
        let mut data = vec![0.0; n * trials];
        if n > 0 {
            data.par_chunks_mut(n).enumerate().for_each(|(t, row)| {
                let mut rng = trial_rng(&base, t);
                for x in row.iter_mut() {
                    let z: f64 = rng.sample(StandardNormal);
                    *x = sigma_mhz * z;
                }
            });
        }
        Self { n, trials, data }
    }

    pub fn trials(&self) -> usize {
        self.trials
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn trial(&self, t: usize) -> &[f64] {
        &self.data[t * self.n..(t + 1) * self.n]
    }

    /// Yield of `design_mhz` over this bank's trials.
    pub fn estimate(&self, design_mhz: &[f64], checks: &Checks, rules: &RuleSet) -> YieldEstimate {
        assert_eq!(design_mhz.len(), self.n, "frequency vector does not match noise bank");
        if checks.is_empty() {
            return YieldEstimate::new(self.trials, self.trials);
        }
        let compiled = rules.compile();
        let successes = (0..self.trials)
            .into_par_iter()
            .with_min_len(256)
            .map_init(
                || vec![0.0; self.n],
                |post, t| {
                    for ((p, d), e) in post.iter_mut().zip(design_mhz).zip(self.trial(t)) {
                        *p = d + e;
                    }
                    usize::from(!collides(post, checks, &compiled))
                },
            )
            .sum();
        YieldEstimate::new(successes, self.trials)
    }

    /// Per-trial success indicators, for sample-by-sample comparisons.
    pub fn outcomes(&self, design_mhz: &[f64], checks: &Checks, rules: &RuleSet) -> Vec<bool> {
        let compiled = rules.compile();
        (0..self.trials)
            .map(|t| {
                let post: Vec<f64> = design_mhz.iter().zip(self.trial(t)).map(|(d, e)| d + e).collect();
                !collides(&post, checks, &compiled)
            })
            .collect()
    }
}

fn trial_rng(base: &ChaCha8Rng, trial: usize) -> ChaCha8Rng {
    let mut rng = base.clone();
    rng.set_stream(trial as u64);
    rng.set_word_pos(0);
    rng
}

/// Full-chip yield of design frequencies (MHz) on connectivity `g`.
pub fn simulate_yield(design_mhz: &[f64], g: &ConnectivityGraph, params: &SimParams, rules: &RuleSet) -> YieldEstimate {
    assert!(params.trials >= 1, "at least one trial");
    let checks = enumerate_checks(g);
    NoiseBank::generate(design_mhz.len(), params.sigma_mhz, params.trials, params.seed).estimate(design_mhz, &checks, rules)
}

/// SplitMix64 finalizer, used to derive independent sub-seeds.
pub fn derive_seed(seed: u64, salt: u64) -> u64 {
    let mut z = seed.wrapping_add(salt.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
