//! Greedy coupling-driven qubit placement on an unbounded 2D lattice.
//!
//! Qubits are placed one at a time. The next qubit is the highest-degree
//! unplaced qubit that couples to something already placed, and it goes to the
//! frontier node minimizing `sum(strength * manhattan distance)` to its placed
//! logical neighbors. Equal-cost nodes resolve to the one nearest the origin
//! (where the first qubit sits), then the greatest `y`, then the least `x`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::circuit::QubitId;
use crate::error::LayoutError;
use crate::profile::{CouplingDegreeList, CouplingStrengthMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Coord {
    pub x: i32,
    pub y: i32,
}

impl Coord {
    pub const fn new(x: i32, y: i32) -> Self {
        Self { x, y }
    }

    pub fn manhattan(self, other: Coord) -> u64 {
        (self.x.abs_diff(other.x) + self.y.abs_diff(other.y)) as u64
    }

    /// North, east, south, west.
    pub fn neighbors4(self) -> [Coord; 4] {
        [
            Coord::new(self.x, self.y + 1),
            Coord::new(self.x + 1, self.y),
            Coord::new(self.x, self.y - 1),
            Coord::new(self.x - 1, self.y),
        ]
    }

    /// Placement preference: greatest `y` first, then least `x`.
    pub fn scan_order(&self, other: &Coord) -> Ordering {
        other.y.cmp(&self.y).then(self.x.cmp(&other.x))
    }
}

impl Ord for Coord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.scan_order(other)
    }
}

impl PartialOrd for Coord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Injective map from qubits to lattice nodes, remembering insertion order.
#[derive(Clone, Debug, Default)]
pub struct Placement {
    by_qubit: BTreeMap<QubitId, Coord>,
    by_coord: HashMap<Coord, QubitId>,
    order: Vec<QubitId>,
}

/// Equal when the same qubits sit on the same nodes, whatever the insertion order.
impl PartialEq for Placement {
    fn eq(&self, other: &Self) -> bool {
        self.by_qubit == other.by_qubit
    }
}

impl Eq for Placement {}

impl Placement {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a placement from `(qubit, coord)` pairs, rejecting collisions.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (QubitId, Coord)>) -> Result<Self, LayoutError> {
        let mut p = Self::new();
        for (q, c) in pairs {
            p.place(q, c)?;
        }
        Ok(p)
    }

    pub fn place(&mut self, q: QubitId, at: Coord) -> Result<(), LayoutError> {
        if self.by_coord.contains_key(&at) {
            return Err(LayoutError::OccupiedNode(at));
        }
        if self.by_qubit.contains_key(&q) {
            return Err(LayoutError::AlreadyPlaced(q.0));
        }
        self.by_qubit.insert(q, at);
        self.by_coord.insert(at, q);
        self.order.push(q);
        Ok(())
    }

    pub fn position(&self, q: QubitId) -> Option<Coord> {
        self.by_qubit.get(&q).copied()
    }

    pub fn occupant(&self, c: Coord) -> Option<QubitId> {
        self.by_coord.get(&c).copied()
    }

    pub fn is_placed(&self, q: QubitId) -> bool {
        self.by_qubit.contains_key(&q)
    }

    pub fn len(&self) -> usize {
        self.by_qubit.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_qubit.is_empty()
    }

    /// Qubits in ascending id order with their coordinates.
    pub fn iter(&self) -> impl Iterator<Item = (QubitId, Coord)> + '_ {
        self.by_qubit.iter().map(|(q, c)| (*q, *c))
    }

    /// Qubits in the order they were placed.
    pub fn placement_order(&self) -> &[QubitId] {
        &self.order
    }

    /// `(min, max)` corners of the occupied region.
    pub fn bounding_box(&self) -> Option<(Coord, Coord)> {
        let mut it = self.by_coord.keys();
        let first = *it.next()?;
        let (mut lo, mut hi) = (first, first);
        for c in it {
            lo.x = lo.x.min(c.x);
            lo.y = lo.y.min(c.y);
            hi.x = hi.x.max(c.x);
            hi.y = hi.y.max(c.y);
        }
        Some((lo, hi))
    }
}

/// Heuristic cost of putting `q` at `loc` given the qubits placed so far.
pub fn node_cost(
    q: QubitId,
    loc: Coord,
    placement: &Placement,
    m: &CouplingStrengthMatrix,
) -> Result<u64, LayoutError> {
    if placement.occupant(loc).is_some() {
        return Err(LayoutError::OccupiedNode(loc));
    }
    Ok(m.neighbors(q.0)
        .filter_map(|(other, w)| placement.position(QubitId(other)).map(|c| w * loc.manhattan(c)))
        .sum())
}

/// Empty nodes 4-adjacent to at least one occupied node, in scan order.
pub fn candidate_nodes(placement: &Placement) -> Vec<Coord> {
    let set: BTreeSet<Coord> = placement
        .iter()
        .flat_map(|(_, c)| c.neighbors4())
        .filter(|c| placement.occupant(*c).is_none())
        .collect();
    set.into_iter().collect()
}

/// Next qubit to place: the highest-degree unplaced qubit coupled to a placed
/// one, or the highest-degree unplaced qubit if none is coupled.
fn next_qubit(l: &CouplingDegreeList, m: &CouplingStrengthMatrix, placement: &Placement) -> Option<QubitId> {
    let mut unplaced = l.entries.iter().map(|e| e.0).filter(|q| !placement.is_placed(*q)).peekable();
    let fallback = *unplaced.peek()?;
    let connected = unplaced.find(|q| m.neighbors(q.0).any(|(o, _)| placement.is_placed(QubitId(o))));
    Some(connected.unwrap_or(fallback))
}

/// Places every qubit of the degree list on the lattice.
pub fn place_qubits(l: &CouplingDegreeList, m: &CouplingStrengthMatrix) -> Placement {
    let mut placement = Placement::new();
    let Some(first) = l.first() else {
        return placement;
    };
    placement.place(first, Coord::new(0, 0)).expect("empty lattice");

    while let Some(q) = next_qubit(l, m, &placement) {
        let origin = Coord::new(0, 0);
        let best = candidate_nodes(&placement)
            .into_iter()
            .map(|c| (node_cost(q, c, &placement, m).expect("candidates are empty"), c.manhattan(origin), c))
            // candidate_nodes is already in scan order, so min_by_key keeps the first tie
            .min_by_key(|(cost, radius, _)| (*cost, *radius))
            .map(|(_, _, c)| c)
            .expect("a non-empty placement always has a frontier");
        placement.place(q, best).expect("candidate node is empty");
    }
    placement
}
