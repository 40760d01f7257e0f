use thiserror::Error;

use crate::layout::Coord;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: syntax error: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: gate '{name}' acts on {arity} qubits; decompose it into 1- and 2-qubit gates")]
    UnsupportedGate { line: usize, name: String, arity: usize },
    #[error("line {line}: qubit index {index} out of range for register of size {size}")]
    IndexOutOfRange { line: usize, index: usize, size: usize },
    #[error("line {line}: only one quantum register is supported")]
    MultipleRegisters { line: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LayoutError {
    #[error("lattice node ({}, {}) is already occupied", .0.x, .0.y)]
    OccupiedNode(Coord),
    #[error("qubit q{0} is already placed")]
    AlreadyPlaced(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BusError {
    #[error("physical pair ({0}, {1}) is provided by more than one bus")]
    DuplicatePair(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("circuit needs {logical} qubits but the architecture has {physical}")]
    TooFewPhysicalQubits { logical: usize, physical: usize },
    #[error("physical qubits {0} and {1} are not connected")]
    Disconnected(usize, usize),
}

#[derive(Debug, Error)]
pub enum RuleSetError {
    #[error("rule set JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid rule set: {0}")]
    Invalid(String),
}

/// Top-level error for the pipeline and the CLI.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Layout(#[from] LayoutError),
    #[error(transparent)]
    Bus(#[from] BusError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Rules(#[from] RuleSetError),
    #[error("unknown baseline '{0}' (expected ibm16, ibm16-4bus, ibm20 or ibm20-4bus)")]
    UnknownBaseline(String),
    #[error("unknown configuration '{0}'")]
    UnknownConfig(String),
    #[error("invalid architecture: {0}")]
    InvalidArchitecture(String),
    #[error("{0}")]
    Usage(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
