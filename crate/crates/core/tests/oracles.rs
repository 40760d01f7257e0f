//! Independent closed-form and brute-force oracles.

use std::time::Instant;

use archflow::mapper::SWAP_COST;
use archflow::yield_sim::{enumerate_checks, sample_fabrication};
use archflow::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ContinuousCDF, Normal};

fn pair() -> ConnectivityGraph {
    ConnectivityGraph::from_pairs(2, [(0, 1)]).unwrap()
}

/// P(|N(gap, sigma * sqrt 2)| >= 17).
fn rule_one_yield(gap: f64, sigma: f64) -> f64 {
    let d = Normal::new(gap, sigma * 2f64.sqrt()).unwrap();
    1.0 - (d.cdf(17.0) - d.cdf(-17.0))
}

#[test]
fn equal_frequency_pair_matches_closed_form() {
    let rules = RuleSet::default().only(&[1]);
    let sim = SimParams { sigma_mhz: 30.0, trials: 10_000, seed: 2024 };
    let start = Instant::now();
    let y = simulate_yield(&[5170.0, 5170.0], &pair(), &sim, &rules);
    let elapsed = start.elapsed();
    let expected = rule_one_yield(0.0, 30.0);
    assert!((expected - 0.689).abs() < 1e-3);
    assert!((y.rate - expected).abs() <= 0.02, "{} vs {expected}", y.rate);
    assert!(elapsed.as_secs_f64() < 1.0, "{elapsed:?}");
}

#[test]
fn yield_follows_the_gap_curve() {
    let rules = RuleSet::default().only(&[1]);
    for (i, gap) in [0.0, 10.0, 25.0, 40.0, 80.0].into_iter().enumerate() {
        let sim = SimParams { sigma_mhz: 30.0, trials: 20_000, seed: i as u64 };
        let y = simulate_yield(&[5100.0, 5100.0 + gap], &pair(), &sim, &rules);
        let p = rule_one_yield(gap, 30.0);
        let se = (p * (1.0 - p) / 20_000.0).sqrt().max(1e-4);
        assert!((y.rate - p).abs() <= 4.0 * se, "gap {gap}: {} vs {p}", y.rate);
    }
}

#[test]
fn fabrication_noise_mean_and_spread() {
    let n = 100_000;
    let sigma = 30.0;
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let out = sample_fabrication(&vec![0.0; n], sigma, &mut rng);
    let mean = out.iter().sum::<f64>() / n as f64;
    let var = out.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    assert!(mean.abs() <= 3.0 * sigma / (n as f64).sqrt(), "{mean}");
    assert!((var.sqrt() - sigma).abs() < 0.5, "{}", var.sqrt());
}

#[test]
fn check_counts_follow_degrees() {
    // pairs = 2 |E|, triples = sum C(deg, 2)
    let graphs: Vec<ConnectivityGraph> = vec![
        ConnectivityGraph::from_pairs(4, [(0, 1), (0, 2), (0, 3)]).unwrap(),
        ConnectivityGraph::from_pairs(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)]).unwrap(),
        baseline_arch(Baseline::Ibm20FourBus).connectivity().unwrap(),
    ];
    for g in graphs {
        let checks = enumerate_checks(&g);
        assert_eq!(checks.pairs.len(), 2 * g.num_pairs());
        let triples: usize = (0..g.num_qubits()).map(|j| g.neighbors(j).len()).map(|d| d * d.saturating_sub(1) / 2).sum();
        assert_eq!(checks.triples.len(), triples);
    }
}

#[test]
fn star_center_has_three_neighbor_pairs() {
    let g = ConnectivityGraph::from_pairs(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
    let checks = enumerate_checks(&g);
    let at_center: Vec<_> = checks.triples.iter().filter(|t| t.0 == 0).collect();
    assert_eq!(at_center.len(), 3);
}

/// Total distance-1 gates after inserting one swap on edge `e` before gate `at`.
fn gates_adjacent_after_swap(c: &Circuit, g: &ConnectivityGraph, e: (usize, usize), at: usize) -> bool {
    let mut l2p: Vec<usize> = (0..c.num_qubits).collect();
    for (i, (a, b)) in c.two_qubit_gates().enumerate() {
        if i == at {
            for p in l2p.iter_mut() {
                if *p == e.0 {
                    *p = e.1;
                } else if *p == e.1 {
                    *p = e.0;
                }
            }
        }
        if !g.connected(l2p[a.0], l2p[b.0]) {
            return false;
        }
    }
    true
}

#[test]
fn single_distant_gate_costs_one_swap() {
    let g = ConnectivityGraph::from_pairs(3, [(0, 1), (1, 2)]).unwrap();
    let mut c = Circuit::new("far", 3);
    c.cx(0, 2);
    // brute force: some single swap makes every gate adjacent
    let feasible = g.pairs().any(|e| gates_adjacent_after_swap(&c, &g, e, 0));
    assert!(feasible);
    let r = route(&c, &g, &archflow::mapper::QubitMap::identity(3)).unwrap();
    assert_eq!(r.inserted_swaps, 1);
    assert_eq!(r.post_gate_count, c.gates.len() + SWAP_COST);
}

#[test]
fn lattice_edge_counts() {
    // w x h grid: h (w - 1) + w (h - 1)
    for (b, w, h) in [(Baseline::Ibm16, 8, 2), (Baseline::Ibm20, 5, 4)] {
        let g = baseline_arch(b).connectivity().unwrap();
        assert_eq!(g.num_pairs(), h * (w - 1) + w * (h - 1));
    }
}
