//! Architecture description and its JSON file format.

use serde::{Deserialize, Serialize};

use crate::bus::{connectivity, BusPlan, ConnectivityGraph, Square};
use crate::circuit::QubitId;
use crate::error::{Error, Result};
use crate::freq::FrequencyPlan;
use crate::layout::{Coord, Placement};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub config: String,
    /// Requested 4-qubit bus budget.
    pub k: usize,
    pub seed: u64,
    pub source: String,
}

/// Physical qubits, buses and design frequencies of one chip.
#[derive(Clone, Debug, PartialEq)]
pub struct Architecture {
    pub placement: Placement,
    pub buses: BusPlan,
    pub freqs: FrequencyPlan,
    pub provenance: Provenance,
}

impl Architecture {
    pub fn num_qubits(&self) -> usize {
        self.placement.len()
    }

    pub fn connectivity(&self) -> Result<ConnectivityGraph> {
        Ok(connectivity(&self.placement, &self.buses)?)
    }

    pub fn num_four_qubit_buses(&self) -> usize {
        self.buses.four_qubit_buses.len()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&ArchFile::from(self)).expect("architecture serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ArchFile = serde_json::from_str(text)?;
        file.try_into()
    }
}

#[derive(Serialize, Deserialize)]
struct QubitEntry {
    id: usize,
    x: i32,
    y: i32,
    freq_ghz: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum BusEntry {
    Bus2 { qubits: [usize; 2] },
    Bus3 { anchor: [i32; 2], qubits: Vec<usize> },
    Bus4 { anchor: [i32; 2], qubits: Vec<usize> },
}

#[derive(Serialize, Deserialize)]
struct ArchFile {
    qubits: Vec<QubitEntry>,
    buses: Vec<BusEntry>,
    #[serde(default)]
    provenance: Provenance,
}

impl From<&Architecture> for ArchFile {
    fn from(a: &Architecture) -> Self {
        let qubits = a
            .placement
            .iter()
            .map(|(q, c)| QubitEntry { id: q.0, x: c.x, y: c.y, freq_ghz: a.freqs.ghz(q.0) })
            .collect();
        let mut buses: Vec<BusEntry> =
            a.buses.two_qubit_buses.iter().map(|(p, q)| BusEntry::Bus2 { qubits: [p.0, q.0] }).collect();
        for s in &a.buses.four_qubit_buses {
            let anchor = [s.anchor.x, s.anchor.y];
            let qubits = s.qubits().into_iter().map(|q| q.0).collect();
            buses.push(if s.occupied_count() == 4 {
                BusEntry::Bus4 { anchor, qubits }
            } else {
                BusEntry::Bus3 { anchor, qubits }
            });
        }
        ArchFile { qubits, buses, provenance: a.provenance.clone() }
    }
}

impl TryFrom<ArchFile> for Architecture {
    type Error = Error;

    fn try_from(f: ArchFile) -> Result<Self> {
        let n = f.qubits.len();
        let mut freqs = vec![f64::NAN; n];
        let mut pairs = Vec::with_capacity(n);
        for q in &f.qubits {
            if q.id >= n || !freqs[q.id].is_nan() {
                return Err(Error::InvalidArchitecture(format!("qubit ids must be dense 0..{n}; bad id {}", q.id)));
            }
            // GHz to MHz, snapped to 1 Hz
            freqs[q.id] = (q.freq_ghz * 1e9).round() / 1e6;
            pairs.push((QubitId(q.id), Coord::new(q.x, q.y)));
        }
        let placement = Placement::from_pairs(pairs)?;
        let mut two = Vec::new();
        let mut squares = Vec::new();
        for b in f.buses {
            match b {
                BusEntry::Bus2 { qubits: [a, b] } => {
                    let (ca, cb) = match (placement.position(QubitId(a)), placement.position(QubitId(b))) {
                        (Some(x), Some(y)) => (x, y),
                        _ => return Err(Error::InvalidArchitecture(format!("bus2 ({a}, {b}) names unknown qubits"))),
                    };
                    if ca.manhattan(cb) != 1 {
                        return Err(Error::InvalidArchitecture(format!("bus2 ({a}, {b}) is not a lattice edge")));
                    }
                    two.push((QubitId(a.min(b)), QubitId(a.max(b))));
                }
                BusEntry::Bus3 { anchor, qubits } | BusEntry::Bus4 { anchor, qubits } => {
                    let s = Square::at(Coord::new(anchor[0], anchor[1]), &placement);
                    let mut expect: Vec<usize> = s.qubits().into_iter().map(|q| q.0).collect();
                    let mut got = qubits.clone();
                    expect.sort_unstable();
                    got.sort_unstable();
                    if expect != got || got.len() < 3 {
                        return Err(Error::InvalidArchitecture(format!(
                            "square bus at {anchor:?} lists {qubits:?} but its corners hold {expect:?}"
                        )));
                    }
                    squares.push(s);
                }
            }
        }
        two.sort();
        let buses = BusPlan { two_qubit_buses: two, four_qubit_buses: squares };
        if !buses.satisfies_prohibited_condition() {
            return Err(Error::InvalidArchitecture("adjacent square buses".into()));
        }
        let arch = Architecture { placement, buses, freqs: FrequencyPlan { freqs_mhz: freqs }, provenance: f.provenance };
        arch.connectivity()?;
        Ok(arch)
    }
}
