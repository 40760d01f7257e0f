//! Design frequency assignment.
//!
//! [`allocate`] walks the connectivity graph breadth-first from the geometric
//! center and gives each qubit the candidate frequency with the best simulated
//! yield over its already-assigned local region. [`five_frequency_plan`] is the
//! fixed five-frequency tiling used by the baseline designs.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bus::ConnectivityGraph;
use crate::circuit::QubitId;
use crate::layout::Placement;
use crate::yield_sim::{derive_seed, enumerate_checks, NoiseBank, RuleSet, SimParams};

pub const FREQ_MIN_MHZ: f64 = 5000.0;
pub const FREQ_MAX_MHZ: f64 = 5340.0;
pub const FREQ_STEP_MHZ: f64 = 10.0;
pub const FREQ_CENTER_MHZ: f64 = 5170.0;

/// The 35 candidate frequencies 5.00, 5.01, ..., 5.34 GHz (in MHz).
pub fn candidate_frequencies() -> Vec<f64> {
    (0..=34).map(|i| FREQ_MIN_MHZ + FREQ_STEP_MHZ * i as f64).collect()
}

/// Five-frequency arithmetic progression 5.00 .. 5.27 GHz (in MHz).
pub fn five_frequencies() -> [f64; 5] {
    let step = (5270.0 - FREQ_MIN_MHZ) / 4.0;
    [0, 1, 2, 3, 4].map(|i| FREQ_MIN_MHZ + step * i as f64)
}

/// Design frequency per physical qubit, in MHz.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrequencyPlan {
    pub freqs_mhz: Vec<f64>,
}

impl FrequencyPlan {
    pub fn ghz(&self, q: usize) -> f64 {
        self.freqs_mhz[q] / 1000.0
    }

    pub fn on_candidate_grid(&self) -> bool {
        self.freqs_mhz.iter().all(|&f| {
            let steps = (f - FREQ_MIN_MHZ) / FREQ_STEP_MHZ;
            (FREQ_MIN_MHZ..=FREQ_MAX_MHZ).contains(&f) && (steps - steps.round()).abs() < 1e-9
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AllocParams {
    pub sigma_mhz: f64,
    /// Monte Carlo trials per candidate frequency.
    pub local_trials: usize,
    pub seed: u64,
}

impl AllocParams {
    pub const DEFAULT_LOCAL_TRIALS: usize = 2000;

    pub fn from_sim(p: &SimParams) -> Self {
        Self { sigma_mhz: p.sigma_mhz, local_trials: Self::DEFAULT_LOCAL_TRIALS, seed: p.seed }
    }
}

impl Default for AllocParams {
    fn default() -> Self {
        Self::from_sim(&SimParams::default())
    }
}

/// Qubit closest to the centroid of `qubits`' coordinates; ties by lowest id.
fn center_of(p: &Placement, qubits: &[QubitId]) -> Option<QubitId> {
    let n = qubits.len() as i64;
    let coords: Vec<_> = qubits.iter().map(|q| (*q, p.position(*q).expect("qubit is placed"))).collect();
    let sx: i64 = coords.iter().map(|(_, c)| c.x as i64).sum();
    let sy: i64 = coords.iter().map(|(_, c)| c.y as i64).sum();
    // squared distance scaled by n^2 stays integral
    coords
        .iter()
        .map(|(q, c)| {
            let dx = n * c.x as i64 - sx;
            let dy = n * c.y as i64 - sy;
            (dx * dx + dy * dy, *q)
        })
        .min()
        .map(|(_, q)| q)
}

pub fn center_qubit(p: &Placement) -> Option<QubitId> {
    let all: Vec<QubitId> = p.iter().map(|(q, _)| q).collect();
    center_of(p, &all)
}

/// Qubits within two hops of `q` that are assigned, plus `q`, ascending.
pub fn local_region(q: usize, g: &ConnectivityGraph, assigned: &[bool]) -> Vec<usize> {
    let mut inside = vec![false; g.num_qubits()];
    inside[q] = true;
    for &a in g.neighbors(q) {
        inside[a] = true;
        for &b in g.neighbors(a) {
            inside[b] = true;
        }
    }
    (0..g.num_qubits()).filter(|&x| x == q || (inside[x] && assigned[x])).collect()
}

/// One qubit's frequency decision.
#[derive(Clone, Debug, PartialEq)]
pub struct AllocationStep {
    pub qubit: usize,
    pub region: Vec<usize>,
    /// `(candidate MHz, successes)` for every candidate.
    pub scores: Vec<(f64, usize)>,
    pub chosen_mhz: f64,
}

pub fn allocate(p: &Placement, g: &ConnectivityGraph, params: &AllocParams, rules: &RuleSet) -> FrequencyPlan {
    allocate_traced(p, g, params, rules).0
}

pub fn allocate_traced(
    p: &Placement,
    g: &ConnectivityGraph,
    params: &AllocParams,
    rules: &RuleSet,
) -> (FrequencyPlan, Vec<AllocationStep>) {
    let n = g.num_qubits();
    let candidates = candidate_frequencies();
    let all_checks = enumerate_checks(g);
    let mut freqs = vec![FREQ_CENTER_MHZ; n];
    let mut assigned = vec![false; n];
    let mut trace = Vec::new();
    let mut step = 0u64;

    for q in bfs_order(p, g) {
        if trace.is_empty() || component_root(&assigned, g, q) {
            // a fresh component: its center takes the middle of the range
            freqs[q] = FREQ_CENTER_MHZ;
            assigned[q] = true;
            trace.push(AllocationStep { qubit: q, region: vec![q], scores: vec![], chosen_mhz: FREQ_CENTER_MHZ });
            continue;
        }
        let region = local_region(q, g, &assigned);
        let mut keep = vec![false; n];
        for &r in &region {
            keep[r] = true;
        }
        let checks = all_checks.restricted(&keep);
        let bank = NoiseBank::generate(n, params.sigma_mhz, params.local_trials, derive_seed(params.seed, step));
        step += 1;

        let scores: Vec<(f64, usize)> = candidates
            .par_iter()
            .map(|&c| {
                let mut trial = freqs.clone();
                trial[q] = c;
                (c, bank.estimate(&trial, &checks, rules).successes)
            })
            .collect();
        // ascending candidates, strict improvement keeps the lowest frequency on ties
        let mut best = scores[0];
        for &s in &scores[1..] {
            if s.1 > best.1 {
                best = s;
            }
        }
        freqs[q] = best.0;
        assigned[q] = true;
        trace.push(AllocationStep { qubit: q, region, scores, chosen_mhz: best.0 });
    }
    (FrequencyPlan { freqs_mhz: freqs }, trace)
}

/// True when none of `q`'s component has been assigned yet.
fn component_root(assigned: &[bool], g: &ConnectivityGraph, q: usize) -> bool {
    let mut seen = vec![false; g.num_qubits()];
    let mut stack = vec![q];
    seen[q] = true;
    while let Some(u) = stack.pop() {
        if assigned[u] {
            return false;
        }
        for &v in g.neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    true
}

/// Breadth-first visiting order. The first component starts at the chip
/// center; later components (lowest unvisited id first) start at their own
/// center. Neighbors are expanded in ascending id.
pub fn bfs_order(p: &Placement, g: &ConnectivityGraph) -> Vec<usize> {
    let n = g.num_qubits();
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut start = center_qubit(p).map(|q| q.0);
    while let Some(s) = start {
        visited[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &v in g.neighbors(u) {
                if !visited[v] {
                    visited[v] = true;
                    queue.push_back(v);
                }
            }
        }
        start = (0..n).find(|&q| !visited[q]).map(|seed| {
            let component = component_of(g, seed);
            let ids: Vec<QubitId> = component.iter().map(|&q| QubitId(q)).collect();
            center_of(p, &ids).expect("component is non-empty").0
        });
    }
    order
}

fn component_of(g: &ConnectivityGraph, q: usize) -> Vec<usize> {
    let mut seen = vec![false; g.num_qubits()];
    let mut stack = vec![q];
    seen[q] = true;
    let mut out = Vec::new();
    while let Some(u) = stack.pop() {
        out.push(u);
        for &v in g.neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Five-frequency tiling: index `(x + 2y) mod 5` relative to the bounding box.
///
/// The pattern gives every node and its four lattice neighbors distinct
/// frequencies, and all four corners of any unit square differ too.
pub fn five_frequency_plan(p: &Placement) -> FrequencyPlan {
    let n = p.iter().map(|(q, _)| q.0 + 1).max().unwrap_or(0);
    let values = five_frequencies();
    let mut freqs = vec![FREQ_MIN_MHZ; n];
    if let Some((lo, _)) = p.bounding_box() {
        for (q, c) in p.iter() {
            let idx = ((c.x - lo.x) + 2 * (c.y - lo.y)).rem_euclid(5) as usize;
            freqs[q.0] = values[idx];
        }
    }
    FrequencyPlan { freqs_mhz: freqs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layout::Coord;

    fn place(coords: &[(i32, i32)]) -> Placement {
        Placement::from_pairs(coords.iter().enumerate().map(|(i, &(x, y))| (QubitId(i), Coord::new(x, y)))).unwrap()
    }

    #[test]
    fn grid_and_progression() {
        let c = candidate_frequencies();
        assert_eq!(c.len(), 35);
        assert_eq!(c[0], 5000.0);
        assert_eq!(c[34], 5340.0);
        assert!(c.contains(&FREQ_CENTER_MHZ));
        let f = five_frequencies();
        for w in f.windows(2) {
            assert!((w[1] - w[0] - 67.5).abs() < 1e-9);
        }
        assert_eq!(f[4], 5270.0);
    }

    #[test]
    fn centers() {
        assert_eq!(center_qubit(&place(&[(3, 4)])), Some(QubitId(0)));
        let plus = place(&[(0, 1), (-1, 0), (0, 0), (1, 0), (0, -1)]);
        assert_eq!(center_qubit(&plus), Some(QubitId(2)));
        let sq = place(&[(1, 1), (0, 1), (1, 0), (0, 0)]);
        assert_eq!(center_qubit(&sq), Some(QubitId(0)));
    }

    #[test]
    fn regions() {
        let iso = ConnectivityGraph::new(3);
        assert_eq!(local_region(1, &iso, &[true, false, true]), vec![1]);

        // path 0-1-2-3, q = 0
        let path = ConnectivityGraph::from_pairs(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(local_region(0, &path, &[false, true, true, true]), vec![0, 1, 2]);
        // unassigned qubits are left out
        assert_eq!(local_region(0, &path, &[false, false, true, true]), vec![0, 2]);
    }

    #[test]
    fn single_qubit_gets_center() {
        let p = place(&[(0, 0)]);
        let plan = allocate(&p, &ConnectivityGraph::new(1), &AllocParams::default(), &RuleSet::default());
        assert_eq!(plan.freqs_mhz, vec![5170.0]);
    }

    #[test]
    fn disconnected_components_restart_at_center() {
        let p = place(&[(0, 0), (1, 0), (5, 5)]);
        let g = ConnectivityGraph::from_pairs(3, [(0, 1)]).unwrap();
        let params = AllocParams { local_trials: 200, ..AllocParams::default() };
        let plan = allocate(&p, &g, &params, &RuleSet::default());
        assert_eq!(plan.freqs_mhz[2], FREQ_CENTER_MHZ);
        assert!(plan.on_candidate_grid());
    }

    #[test]
    fn five_frequency_tiling_is_periodic() {
        let mut coords = Vec::new();
        for y in 0..6 {
            for x in 0..7 {
                coords.push((x, y));
            }
        }
        let p = place(&coords);
        let plan = five_frequency_plan(&p);
        for (q, c) in p.iter() {
            if let Some(r) = p.occupant(Coord::new(c.x + 5, c.y)) {
                assert_eq!(plan.freqs_mhz[q.0], plan.freqs_mhz[r.0]);
            }
            if let Some(r) = p.occupant(Coord::new(c.x, c.y + 5)) {
                assert_eq!(plan.freqs_mhz[q.0], plan.freqs_mhz[r.0]);
            }
            for nb in c.neighbors4() {
                if let Some(r) = p.occupant(nb) {
                    assert_ne!(plan.freqs_mhz[q.0], plan.freqs_mhz[r.0]);
                }
            }
        }
    }
}
