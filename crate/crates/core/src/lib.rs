//! Application-specific superconducting chip design.
//!
//! The flow takes an OpenQASM 2.0 program and produces a chip:
//!
//! 1. [`profile`] counts two-qubit interactions into a coupling strength matrix.
//! 2. [`layout`] places qubits on a 2D lattice so strongly coupled pairs sit close.
//! 3. [`bus`] turns the most valuable unit squares into 4-qubit buses.
//! 4. [`freq`] picks per-qubit frequencies that maximize Monte Carlo yield
//!    under the collision model in [`yield_sim`].
//!
//! [`mapper`] routes the program onto the result and [`flow`] chains the
//! stages, builds the fixed baseline chips and runs yield/performance sweeps.

pub mod arch;
pub mod bus;
pub mod circuit;
pub mod error;
pub mod flow;
pub mod freq;
pub mod layout;
pub mod mapper;
pub mod profile;
pub mod yield_sim;

pub use arch::{Architecture, Provenance};
pub use bus::{connectivity, select_buses, BusPlan, ConnectivityGraph, Square};
pub use circuit::{parse_qasm, parse_qasm_named, Circuit, Gate, QubitId};
pub use error::{Error, Result};
pub use flow::{baseline_arch, pareto_sweep, run_flow, Baseline, Config, FlowOptions, SweepRow};
pub use freq::{allocate, five_frequency_plan, AllocParams, FrequencyPlan};
pub use layout::{place_qubits, Coord, Placement};
pub use mapper::{initial_mapping, route, QubitMap, RoutedResult, RouterConfig};
pub use profile::{CouplingDegreeList, CouplingProfile, CouplingStrengthMatrix};
pub use yield_sim::{simulate_yield, RuleSet, SimParams, YieldEstimate};
