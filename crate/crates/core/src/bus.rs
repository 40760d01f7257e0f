//! Bus selection: 2-qubit buses on occupied lattice edges, upgraded to
//! 4-qubit (or 3-qubit) buses on selected unit squares.
//!
//! Two selected squares may never share a lattice edge, and a selected square
//! replaces the 2-qubit buses on its boundary.

use std::collections::{BTreeSet, HashMap, HashSet};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::circuit::QubitId;
use crate::error::BusError;
use crate::layout::{Coord, Placement};
use crate::profile::CouplingStrengthMatrix;

/// A unit lattice square identified by its lower-left corner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Square {
    pub anchor: Coord,
    /// Occupants of `[(x,y), (x+1,y), (x,y+1), (x+1,y+1)]`.
    pub corners: [Option<QubitId>; 4],
}

impl Square {
    pub fn corner_coords(anchor: Coord) -> [Coord; 4] {
        let Coord { x, y } = anchor;
        [Coord::new(x, y), Coord::new(x + 1, y), Coord::new(x, y + 1), Coord::new(x + 1, y + 1)]
    }

    pub fn at(anchor: Coord, p: &Placement) -> Self {
        Self { anchor, corners: Self::corner_coords(anchor).map(|c| p.occupant(c)) }
    }

    pub fn occupied_count(&self) -> usize {
        self.corners.iter().flatten().count()
    }

    pub fn qubits(&self) -> Vec<QubitId> {
        self.corners.iter().flatten().copied().collect()
    }

    /// The two diagonals, as corner index pairs.
    const DIAGONALS: [(usize, usize); 2] = [(0, 3), (1, 2)];

    /// Diagonal pairs whose both corners are occupied.
    pub fn diagonal_pairs(&self) -> impl Iterator<Item = (QubitId, QubitId)> + '_ {
        Self::DIAGONALS.iter().filter_map(|&(a, b)| Some((self.corners[a]?, self.corners[b]?)))
    }

    /// Anchors of the squares sharing an edge with this one.
    pub fn edge_neighbors(anchor: Coord) -> [Coord; 4] {
        anchor.neighbors4()
    }

    pub fn is_adjacent(&self, other: &Square) -> bool {
        self.anchor.manhattan(other.anchor) == 1
    }
}

/// Squares with at least three occupied corners, in scan order of their anchors.
pub fn enumerate_squares(p: &Placement) -> Vec<Square> {
    let anchors: BTreeSet<Coord> = p
        .iter()
        .flat_map(|(_, c)| {
            [Coord::new(c.x, c.y), Coord::new(c.x - 1, c.y), Coord::new(c.x, c.y - 1), Coord::new(c.x - 1, c.y - 1)]
        })
        .collect();
    anchors.into_iter().map(|a| Square::at(a, p)).filter(|s| s.occupied_count() >= 3).collect()
}

/// Summed coupling strength across the occupied diagonals of `s`.
pub fn cross_weight(s: &Square, m: &CouplingStrengthMatrix) -> u64 {
    s.diagonal_pairs().map(|(a, b)| m.get(a.0, b.0)).sum()
}

/// Buses of an architecture.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BusPlan {
    /// Occupied lattice edges not covered by a selected square, sorted.
    pub two_qubit_buses: Vec<(QubitId, QubitId)>,
    /// Selected squares, in selection order.
    pub four_qubit_buses: Vec<Square>,
}

impl BusPlan {
    /// Builds the plan for a set of selected squares.
    pub fn with_squares(p: &Placement, squares: Vec<Square>) -> Self {
        let selected: HashSet<Coord> = squares.iter().map(|s| s.anchor).collect();
        let mut two = Vec::new();
        for (q, c) in p.iter() {
            // horizontal edge: bottom of square (x,y), top of square (x,y-1)
            if let Some(r) = p.occupant(Coord::new(c.x + 1, c.y)) {
                if !selected.contains(&c) && !selected.contains(&Coord::new(c.x, c.y - 1)) {
                    two.push(ordered(q, r));
                }
            }
            // vertical edge: left of square (x,y), right of square (x-1,y)
            if let Some(u) = p.occupant(Coord::new(c.x, c.y + 1)) {
                if !selected.contains(&c) && !selected.contains(&Coord::new(c.x - 1, c.y)) {
                    two.push(ordered(q, u));
                }
            }
        }
        two.sort();
        Self { two_qubit_buses: two, four_qubit_buses: squares }
    }

    /// No two selected squares share a lattice edge.
    pub fn satisfies_prohibited_condition(&self) -> bool {
        let b = &self.four_qubit_buses;
        (0..b.len()).all(|i| ((i + 1)..b.len()).all(|j| !b[i].is_adjacent(&b[j]) && b[i].anchor != b[j].anchor))
    }
}

fn ordered(a: QubitId, b: QubitId) -> (QubitId, QubitId) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// One iteration of the greedy square selection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelectionStep {
    pub chosen: Coord,
    pub filtered_weight: i64,
    /// Filtered weight of every square that was eligible at this step.
    pub eligible: Vec<(Coord, i64)>,
}

/// Greedy filtered-weight selection of at most `k_max` squares.
pub fn select_buses(p: &Placement, m: &CouplingStrengthMatrix, k_max: usize) -> BusPlan {
    select_buses_traced(p, m, k_max).0
}

pub fn select_buses_traced(
    p: &Placement,
    m: &CouplingStrengthMatrix,
    k_max: usize,
) -> (BusPlan, Vec<SelectionStep>) {
    let squares = enumerate_squares(p);
    let index: HashMap<Coord, usize> = squares.iter().enumerate().map(|(i, s)| (s.anchor, i)).collect();
    let neighbors: Vec<Vec<usize>> = squares
        .iter()
        .map(|s| Square::edge_neighbors(s.anchor).iter().filter_map(|a| index.get(a).copied()).collect())
        .collect();
    let mut weight: Vec<u64> = squares.iter().map(|s| cross_weight(s, m)).collect();
    let mut available = vec![true; squares.len()];
    let mut chosen = Vec::new();
    let mut trace = Vec::new();

    for _ in 0..k_max {
        let eligible: Vec<(usize, i64)> = (0..squares.len())
            .filter(|&i| available[i] && weight[i] > 0)
            .map(|i| {
                let penalty: u64 = neighbors[i].iter().map(|&n| weight[n]).sum();
                (i, weight[i] as i64 - penalty as i64)
            })
            .collect();
        // first maximum in scan order
        let Some(&(best, fw)) = eligible.iter().fold(None, |acc: Option<&(usize, i64)>, e| match acc {
            Some(a) if a.1 >= e.1 => Some(a),
            _ => Some(e),
        }) else {
            break;
        };
        trace.push(SelectionStep {
            chosen: squares[best].anchor,
            filtered_weight: fw,
            eligible: eligible.iter().map(|&(i, w)| (squares[i].anchor, w)).collect(),
        });
        available[best] = false;
        for &n in &neighbors[best] {
            weight[n] = 0;
            available[n] = false;
        }
        chosen.push(squares[best]);
    }
    (BusPlan::with_squares(p, chosen), trace)
}

/// Uniformly random selection of up to `k` squares under the prohibited condition.
pub fn random_buses<R: Rng + ?Sized>(p: &Placement, k: usize, rng: &mut R) -> BusPlan {
    let squares = enumerate_squares(p);
    let mut available: Vec<usize> = (0..squares.len()).collect();
    let mut chosen: Vec<Square> = Vec::new();
    while chosen.len() < k && !available.is_empty() {
        let pick = squares[available[rng.random_range(0..available.len())]];
        available.retain(|&i| squares[i].anchor != pick.anchor && !squares[i].is_adjacent(&pick));
        chosen.push(pick);
    }
    BusPlan::with_squares(p, chosen)
}

/// As many squares as the prohibited condition allows, regardless of weight.
///
/// Square adjacency is bipartite by anchor parity, so a maximum independent
/// set is the complement of a minimum vertex cover (König).
pub fn max_buses(p: &Placement) -> BusPlan {
    let squares = enumerate_squares(p);
    let n = squares.len();
    let is_left = |i: usize| (squares[i].anchor.x + squares[i].anchor.y).rem_euclid(2) == 0;
    let adj: Vec<Vec<usize>> =
        (0..n).map(|i| (0..n).filter(|&j| squares[i].is_adjacent(&squares[j])).collect()).collect();

    // Kuhn's augmenting paths from the left side.
    let mut match_of: Vec<Option<usize>> = vec![None; n];
    fn augment(u: usize, adj: &[Vec<usize>], seen: &mut [bool], match_of: &mut [Option<usize>]) -> bool {
        for &v in &adj[u] {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            if match_of[v].is_none() || augment(match_of[v].unwrap(), adj, seen, match_of) {
                match_of[v] = Some(u);
                match_of[u] = Some(v);
                return true;
            }
        }
        false
    }
    for u in (0..n).filter(|&u| is_left(u)) {
        let mut seen = vec![false; n];
        augment(u, &adj, &mut seen, &mut match_of);
    }

    // Alternating reachability from unmatched left vertices.
    let mut reach = vec![false; n];
    let mut stack: Vec<usize> = (0..n).filter(|&u| is_left(u) && match_of[u].is_none()).collect();
    for &u in &stack {
        reach[u] = true;
    }
    while let Some(u) = stack.pop() {
        if is_left(u) {
            for &v in &adj[u] {
                if match_of[u] != Some(v) && !reach[v] {
                    reach[v] = true;
                    stack.push(v);
                }
            }
        } else if let Some(w) = match_of[u] {
            if !reach[w] {
                reach[w] = true;
                stack.push(w);
            }
        }
    }
    let chosen = (0..n).filter(|&i| if is_left(i) { reach[i] } else { !reach[i] }).map(|i| squares[i]).collect();
    BusPlan::with_squares(p, chosen)
}

/// Physical qubit pairs that support native two-qubit gates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectivityGraph {
    n: usize,
    pairs: BTreeSet<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl ConnectivityGraph {
    pub fn new(n: usize) -> Self {
        Self { n, pairs: BTreeSet::new(), adj: vec![Vec::new(); n] }
    }

    /// Adds an undirected pair; duplicates are an error.
    pub fn add_pair(&mut self, a: usize, b: usize) -> Result<(), BusError> {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        assert!(a != b && b < self.n, "invalid pair ({a}, {b})");
        if !self.pairs.insert((a, b)) {
            return Err(BusError::DuplicatePair(a, b));
        }
        self.adj[a].push(b);
        self.adj[b].push(a);
        self.adj[a].sort_unstable();
        self.adj[b].sort_unstable();
        Ok(())
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, BusError> {
        let mut g = Self::new(n);
        for (a, b) in pairs {
            g.add_pair(a, b)?;
        }
        Ok(g)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn num_pairs(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }

    /// Neighbors in ascending order.
    pub fn neighbors(&self, q: usize) -> &[usize] {
        &self.adj[q]
    }

    pub fn connected(&self, a: usize, b: usize) -> bool {
        let key = if a < b { (a, b) } else { (b, a) };
        self.pairs.contains(&key)
    }

    /// All-pairs hop distances; `usize::MAX` where unreachable.
    pub fn distance_matrix(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|s| {
                let mut dist = vec![usize::MAX; self.n];
                let mut queue = std::collections::VecDeque::from([s]);
                dist[s] = 0;
                while let Some(u) = queue.pop_front() {
                    for &v in &self.adj[u] {
                        if dist[v] == usize::MAX {
                            dist[v] = dist[u] + 1;
                            queue.push_back(v);
                        }
                    }
                }
                dist
            })
            .collect()
    }
}

/// Union of the qubit pairs provided by every bus in `b`.
pub fn connectivity(p: &Placement, b: &BusPlan) -> Result<ConnectivityGraph, BusError> {
    let n = p.iter().map(|(q, _)| q.0 + 1).max().unwrap_or(0);
    let mut g = ConnectivityGraph::new(n);
    for &(a, c) in &b.two_qubit_buses {
        g.add_pair(a.0, c.0)?;
    }
    for s in &b.four_qubit_buses {
        let qs = s.qubits();
        for i in 0..qs.len() {
            for j in (i + 1)..qs.len() {
                g.add_pair(qs[i].0, qs[j].0)?;
            }
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn place(coords: &[(i32, i32)]) -> Placement {
        Placement::from_pairs(coords.iter().enumerate().map(|(i, &(x, y))| (QubitId(i), Coord::new(x, y)))).unwrap()
    }

    fn block(w: i32, h: i32) -> Placement {
        let mut v = Vec::new();
        for y in 0..h {
            for x in 0..w {
                v.push((x, y));
            }
        }
        place(&v)
    }

    #[test]
    fn square_enumeration_shapes() {
        let sq = enumerate_squares(&block(2, 2));
        assert_eq!(sq.len(), 1);
        assert_eq!(sq[0].occupied_count(), 4);

        let tromino = enumerate_squares(&place(&[(0, 0), (1, 0), (0, 1)]));
        assert_eq!(tromino.len(), 1);
        assert_eq!(tromino[0].occupied_count(), 3);

        assert!(enumerate_squares(&place(&[(0, 0), (1, 0), (2, 0), (3, 0)])).is_empty());
    }

    #[test]
    fn weights() {
        // corners: q0 (0,0), q1 (1,0), q2 (0,1), q3 (1,1); diagonals q0-q3 and q1-q2
        let p = block(2, 2);
        let m = CouplingStrengthMatrix::from_pairs(4, [(0, 3, 4), (1, 2, 1), (0, 1, 9)]);
        assert_eq!(cross_weight(&enumerate_squares(&p)[0], &m), 5);

        let p3 = place(&[(0, 0), (1, 0), (0, 1)]);
        let m3 = CouplingStrengthMatrix::from_pairs(3, [(1, 2, 7), (0, 1, 3)]);
        assert_eq!(cross_weight(&enumerate_squares(&p3)[0], &m3), 7);

        let none = CouplingStrengthMatrix::from_pairs(4, [(0, 1, 9), (2, 3, 9)]);
        assert_eq!(cross_weight(&enumerate_squares(&p)[0], &none), 0);
    }

    #[test]
    fn zero_budget_keeps_all_edges() {
        let p = block(3, 2);
        let m = CouplingStrengthMatrix::from_pairs(6, [(0, 4, 5)]);
        let plan = select_buses(&p, &m, 0);
        assert!(plan.four_qubit_buses.is_empty());
        assert_eq!(plan.two_qubit_buses.len(), 7);
    }

    #[test]
    fn single_positive_square_selected_and_neighbor_blocked() {
        // 3x2 block: squares anchored (0,0) and (1,0); only the left has diagonal traffic
        let p = block(3, 2);
        let m = CouplingStrengthMatrix::from_pairs(6, [(0, 4, 5), (0, 1, 2)]);
        let (plan, trace) = select_buses_traced(&p, &m, 1);
        assert_eq!(plan.four_qubit_buses.len(), 1);
        assert_eq!(plan.four_qubit_buses[0].anchor, Coord::new(0, 0));
        assert_eq!(trace[0].filtered_weight, 5);
        // the boundary edges of the chosen square are gone: 7 - 4
        assert_eq!(plan.two_qubit_buses.len(), 3);
        let (plan2, _) = select_buses_traced(&p, &m, 5);
        assert_eq!(plan2.four_qubit_buses.len(), 1);
    }

    #[test]
    fn zero_weight_squares_never_selected() {
        let p = block(4, 4);
        let m = CouplingStrengthMatrix::from_pairs(16, (0..15).map(|i| (i, i + 1, 3)));
        let plan = select_buses(&p, &m, 9);
        // only squares whose diagonals hold a chain pair: rows wrap 3->4, 7->8, 11->12 are not diagonals
        for s in &plan.four_qubit_buses {
            assert!(cross_weight(s, &m) > 0);
        }
    }

    #[test]
    fn pair_counts_per_bus_kind() {
        let p = place(&[(0, 0), (1, 0)]);
        let g = connectivity(&p, &BusPlan::with_squares(&p, vec![])).unwrap();
        assert_eq!(g.num_pairs(), 1);

        let p = block(2, 2);
        let sq = enumerate_squares(&p);
        let g = connectivity(&p, &BusPlan::with_squares(&p, sq)).unwrap();
        assert_eq!(g.num_pairs(), 6);

        let p = place(&[(0, 0), (1, 0), (0, 1)]);
        let sq = enumerate_squares(&p);
        let plan = BusPlan::with_squares(&p, sq);
        assert!(plan.two_qubit_buses.is_empty());
        assert_eq!(connectivity(&p, &plan).unwrap().num_pairs(), 3);
    }

    #[test]
    fn adjacent_selected_squares_surface_duplicates() {
        let p = block(3, 2);
        let sq = enumerate_squares(&p);
        let plan = BusPlan { two_qubit_buses: vec![], four_qubit_buses: sq };
        assert!(!plan.satisfies_prohibited_condition());
        assert!(matches!(connectivity(&p, &plan), Err(BusError::DuplicatePair(_, _))));
    }

    #[test]
    fn max_buses_checkerboard() {
        // 2x8 lattice: 7 squares in a row, at most 4 non-adjacent
        assert_eq!(max_buses(&block(8, 2)).four_qubit_buses.len(), 4);
        // 5x4 lattice: 4x3 squares, checkerboard gives 6
        let plan = max_buses(&block(5, 4));
        assert_eq!(plan.four_qubit_buses.len(), 6);
        assert!(plan.satisfies_prohibited_condition());
    }
}
