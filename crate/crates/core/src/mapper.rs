//! Initial placement and SWAP-insertion routing onto a connectivity graph.
//!
//! The router walks the circuit in order. When a two-qubit gate's physical
//! endpoints are not adjacent it inserts SWAPs on edges touching either
//! endpoint, scoring each by the summed distance of the front layer plus a
//! weighted next layer. A SWAP that does not bring the blocked gate closer is
//! replaced by the first step along a shortest path, so every SWAP makes
//! progress and routing always terminates.

use crate::bus::ConnectivityGraph;
use crate::circuit::{Circuit, GateKind};
use crate::error::MapError;
use crate::profile::CouplingProfile;

/// Gates charged per inserted SWAP.
pub const SWAP_COST: usize = 3;

/// Logical to physical assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QubitMap {
    l2p: Vec<usize>,
    p2l: Vec<Option<usize>>,
}

impl QubitMap {
    pub fn new(l2p: Vec<usize>, num_physical: usize) -> Self {
        let mut p2l = vec![None; num_physical];
        for (l, &p) in l2p.iter().enumerate() {
            assert!(p2l[p].is_none(), "physical qubit {p} assigned twice");
            p2l[p] = Some(l);
        }
        Self { l2p, p2l }
    }

    pub fn identity(n: usize) -> Self {
        Self::new((0..n).collect(), n)
    }

    #[inline]
    pub fn physical(&self, logical: usize) -> usize {
        self.l2p[logical]
    }

    pub fn logical(&self, physical: usize) -> Option<usize> {
        self.p2l[physical]
    }

    pub fn num_logical(&self) -> usize {
        self.l2p.len()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.l2p
    }

    fn swap_physical(&mut self, a: usize, b: usize) {
        let (la, lb) = (self.p2l[a], self.p2l[b]);
        self.p2l[a] = lb;
        self.p2l[b] = la;
        if let Some(l) = la {
            self.l2p[l] = b;
        }
        if let Some(l) = lb {
            self.l2p[l] = a;
        }
    }
}

/// Routed operation, in physical qubits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RoutedOp {
    Swap(usize, usize),
    /// Index into the source circuit and the physical operands it ran on.
    Gate { index: usize, physical: [usize; 2], arity: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoutedResult {
    pub inserted_swaps: usize,
    pub post_gate_count: usize,
    pub final_map: QubitMap,
    pub ops: Vec<RoutedOp>,
}

pub fn performance_metric(r: &RoutedResult) -> usize {
    r.post_gate_count
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RouterConfig {
    /// Weight of the layer after the front layer.
    pub lookahead_weight: f64,
    /// Upcoming two-qubit gates considered when building layers.
    pub window: usize,
    /// Forward/backward refinement passes in [`map_and_route`].
    pub refine_rounds: usize,
}

impl Default for RouterConfig {
    fn default() -> Self {
        Self { lookahead_weight: 0.5, window: 20, refine_rounds: 3 }
    }
}

fn hop_distances(g: &ConnectivityGraph) -> Vec<Vec<u64>> {
    let unreachable = (g.num_qubits() as u64 + 1) * 4;
    g.distance_matrix()
        .into_iter()
        .map(|row| row.into_iter().map(|d| if d == usize::MAX { unreachable } else { d as u64 }).collect())
        .collect()
}

/// Greedy coupling-aware initial map, tried from every physical seed.
///
/// Logical qubits are taken highest degree first among those coupled to an
/// assigned one. Each goes to the free physical qubit minimizing
/// `sum(strength * hop distance)` to its assigned logical neighbors; ties
/// prefer more free physical neighbors, then the lower id. The seed with the
/// lowest total weighted distance wins.
pub fn initial_mapping(profile: &CouplingProfile, g: &ConnectivityGraph) -> Result<QubitMap, MapError> {
    let nl = profile.matrix.n();
    let np = g.num_qubits();
    if nl > np {
        return Err(MapError::TooFewPhysicalQubits { logical: nl, physical: np });
    }
    if nl == 0 {
        return Ok(QubitMap::new(vec![], np));
    }
    let dist = hop_distances(g);
    let m = &profile.matrix;
    let total = |l2p: &[usize]| -> u64 {
        (0..nl)
            .flat_map(|a| ((a + 1)..nl).map(move |b| (a, b)))
            .map(|(a, b)| m.get(a, b) * dist[l2p[a]][l2p[b]])
            .sum()
    };

    let mut best: Option<(u64, Vec<usize>)> = None;
    for seed in 0..np {
        let l2p = grow_mapping(profile, g, &dist, seed);
        let cost = total(&l2p);
        if best.as_ref().is_none_or(|(c, _)| cost < *c) {
            best = Some((cost, l2p));
        }
    }
    Ok(QubitMap::new(best.expect("np >= 1").1, np))
}

fn grow_mapping(profile: &CouplingProfile, g: &ConnectivityGraph, dist: &[Vec<u64>], seed: usize) -> Vec<usize> {
    let m = &profile.matrix;
    let nl = m.n();
    let np = g.num_qubits();
    let mut l2p = vec![usize::MAX; nl];
    let mut used = vec![false; np];
    let order: Vec<usize> = profile.degrees.entries.iter().map(|e| e.0 .0).collect();

    l2p[order[0]] = seed;
    used[seed] = true;
    for _ in 1..nl {
        let unassigned = order.iter().copied().filter(|&q| l2p[q] == usize::MAX);
        let mut fallback = None;
        let mut next = None;
        for q in unassigned {
            fallback.get_or_insert(q);
            if m.neighbors(q).any(|(o, _)| l2p[o] != usize::MAX) {
                next = Some(q);
                break;
            }
        }
        let q = next.or(fallback).expect("an unassigned qubit remains");
        let free_degree = |p: usize| g.neighbors(p).iter().filter(|&&x| !used[x]).count();
        let target = (0..np)
            .filter(|&p| !used[p])
            .min_by_key(|&p| {
                let cost: u64 = m.neighbors(q).filter(|(o, _)| l2p[*o] != usize::MAX).map(|(o, w)| w * dist[p][l2p[o]]).sum();
                (cost, std::cmp::Reverse(free_degree(p)), p)
            })
            .expect("enough physical qubits");
        l2p[q] = target;
        used[target] = true;
    }
    l2p
}

pub fn route(c: &Circuit, g: &ConnectivityGraph, map0: &QubitMap) -> Result<RoutedResult, MapError> {
    route_with(c, g, map0, &RouterConfig::default())
}

pub fn route_with(
    c: &Circuit,
    g: &ConnectivityGraph,
    map0: &QubitMap,
    cfg: &RouterConfig,
) -> Result<RoutedResult, MapError> {
    if c.num_qubits > map0.num_logical() {
        return Err(MapError::TooFewPhysicalQubits { logical: c.num_qubits, physical: map0.num_logical() });
    }
    let dist = hop_distances(g);
    let unreachable = (g.num_qubits() as u64 + 1) * 4;
    let two: Vec<(usize, usize, usize)> = c
        .gates
        .iter()
        .enumerate()
        .filter_map(|(i, gate)| gate.pair().map(|(a, b)| (i, a.0, b.0)))
        .collect();

    let mut map = map0.clone();
    let mut ops = Vec::with_capacity(c.gates.len());
    let mut swaps = 0usize;
    let mut next_two = 0usize;

    for (index, gate) in c.gates.iter().enumerate() {
        if gate.kind != GateKind::TwoQubit {
            let p = map.physical(gate.operands[0].0);
            ops.push(RoutedOp::Gate { index, physical: [p, p], arity: 1 });
            continue;
        }
        let (a, b) = (gate.operands[0].0, gate.operands[1].0);
        loop {
            let (pa, pb) = (map.physical(a), map.physical(b));
            let d = dist[pa][pb];
            if d == 1 {
                break;
            }
            if d >= unreachable {
                return Err(MapError::Disconnected(pa, pb));
            }
            let (front, after) = layers(&two[next_two..], cfg.window);
            let window: Layer = two[next_two..].iter().take(cfg.window.max(1)).map(|&(_, x, y)| (x, y)).collect();
            let score = |m: &QubitMap, s: (usize, usize)| -> (f64, f64) {
                let pos = |l: usize| {
                    let p = m.physical(l);
                    if p == s.0 {
                        s.1
                    } else if p == s.1 {
                        s.0
                    } else {
                        p
                    }
                };
                let sum = |layer: &[(usize, usize)]| -> f64 {
                    layer.iter().map(|&(x, y)| dist[pos(x)][pos(y)] as f64).sum()
                };
                (sum(&front) + cfg.lookahead_weight * sum(&after), sum(&window))
            };
            let mut candidates: Vec<(usize, usize)> = g
                .neighbors(pa)
                .iter()
                .map(|&x| (pa, x))
                .chain(g.neighbors(pb).iter().map(|&y| (pb, y)))
                .map(|(u, v)| if u < v { (u, v) } else { (v, u) })
                .collect();
            candidates.sort_unstable();
            candidates.dedup();
            let best = candidates
                .iter()
                .copied()
                .map(|s| (score(&map, s), s))
                // equal scores fall back to the whole window, then the lowest pair
                .min_by(|x, y| x.0 .0.total_cmp(&y.0 .0).then(x.0 .1.total_cmp(&y.0 .1)).then(x.1.cmp(&y.1)))
                .map(|(_, s)| s)
                .expect("a blocked endpoint has neighbors");
            let moved = |p: usize| if p == best.0 { best.1 } else if p == best.1 { best.0 } else { p };
            let chosen = if dist[moved(pa)][moved(pb)] < d {
                best
            } else {
                let step = *g
                    .neighbors(pa)
                    .iter()
                    .find(|&&x| dist[x][pb] + 1 == d)
                    .expect("a shortest path exists");
                (pa.min(step), pa.max(step))
            };
            map.swap_physical(chosen.0, chosen.1);
            ops.push(RoutedOp::Swap(chosen.0, chosen.1));
            swaps += 1;
        }
        ops.push(RoutedOp::Gate { index, physical: [map.physical(a), map.physical(b)], arity: 2 });
        next_two += 1;
    }

    Ok(RoutedResult { inserted_swaps: swaps, post_gate_count: c.gates.len() + SWAP_COST * swaps, final_map: map, ops })
}

/// Routes from [`initial_mapping`] and from maps refined by routing the
/// two-qubit gates forward then backward, keeping the cheapest result.
pub fn map_and_route(
    c: &Circuit,
    profile: &CouplingProfile,
    g: &ConnectivityGraph,
    cfg: &RouterConfig,
) -> Result<RoutedResult, MapError> {
    let mut map = initial_mapping(profile, g)?;
    let mut best = route_with(c, g, &map, cfg)?;
    let mut forward = Circuit::new(c.name.clone(), c.num_qubits);
    for gate in c.gates.iter().filter(|g| g.kind == GateKind::TwoQubit) {
        forward.push(gate.clone());
    }
    let mut backward = Circuit::new(c.name.clone(), c.num_qubits);
    for gate in forward.gates.iter().rev() {
        backward.push(gate.clone());
    }
    for _ in 0..cfg.refine_rounds {
        let there = route_with(&forward, g, &map, cfg)?.final_map;
        map = route_with(&backward, g, &there, cfg)?.final_map;
        let r = route_with(c, g, &map, cfg)?;
        if r.post_gate_count < best.post_gate_count {
            best = r;
        }
    }
    Ok(best)
}

/// First two dependency layers of the upcoming two-qubit gates.
type Layer = Vec<(usize, usize)>;

fn layers(upcoming: &[(usize, usize, usize)], window: usize) -> (Layer, Layer) {
    let mut depth: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
    let mut front = Vec::new();
    let mut after = Vec::new();
    for &(_, a, b) in upcoming.iter().take(window.max(1)) {
        let level = depth.get(&a).copied().unwrap_or(0).max(depth.get(&b).copied().unwrap_or(0));
        match level {
            0 => front.push((a, b)),
            1 => after.push((a, b)),
            _ => {}
        }
        depth.insert(a, level + 1);
        depth.insert(b, level + 1);
    }
    (front, after)
}
