//! Two-qubit gate profiling: coupling strength matrix and coupling degree list.

use std::io::Write;

use crate::circuit::{Circuit, QubitId};

/// Symmetric count of two-qubit gates per logical pair. Direction is ignored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CouplingStrengthMatrix {
    n: usize,
    cells: Vec<u64>,
}

impl CouplingStrengthMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, cells: vec![0; n * n] }
    }

    /// Builds a matrix from undirected weighted pairs. Repeated pairs accumulate.
    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize, u64)>) -> Self {
        let mut m = Self::zeros(n);
        for (a, b, w) in pairs {
            m.add(a, b, w);
        }
        m
    }

    fn add(&mut self, a: usize, b: usize, w: u64) {
        assert!(a != b, "self-coupling q{a}");
        self.cells[a * self.n + b] += w;
        self.cells[b * self.n + a] += w;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> u64 {
        self.cells[a * self.n + b]
    }

    pub fn row(&self, a: usize) -> &[u64] {
        &self.cells[a * self.n..(a + 1) * self.n]
    }

    /// Logical neighbors of `a` with nonzero strength.
    pub fn neighbors(&self, a: usize) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.row(a).iter().enumerate().filter(|(_, &w)| w > 0).map(|(b, &w)| (b, w))
    }

    pub fn degree(&self, a: usize) -> u64 {
        self.row(a).iter().sum()
    }

    /// Sum over the upper triangle, i.e. the number of two-qubit gates profiled.
    pub fn total(&self) -> u64 {
        (0..self.n).flat_map(|i| ((i + 1)..self.n).map(move |j| (i, j))).map(|(i, j)| self.get(i, j)).sum()
    }

    /// Writes the matrix as CSV with a `q0..qN-1` header row.
    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record((0..self.n).map(|i| format!("q{i}")))?;
        for i in 0..self.n {
            w.write_record(self.row(i).iter().map(u64::to_string))?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Logical qubits sorted by coupling degree, descending; ties by ascending id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CouplingDegreeList {
    pub entries: Vec<(QubitId, u64)>,
}

impl CouplingDegreeList {
    pub fn first(&self) -> Option<QubitId> {
        self.entries.first().map(|e| e.0)
    }

    pub fn degree_of(&self, q: QubitId) -> u64 {
        self.entries.iter().find(|e| e.0 == q).map_or(0, |e| e.1)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Both profiling results for one circuit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CouplingProfile {
    pub matrix: CouplingStrengthMatrix,
    pub degrees: CouplingDegreeList,
}

impl CouplingProfile {
    pub fn of(c: &Circuit) -> Self {
        let matrix = coupling_matrix(c);
        let degrees = degree_list(&matrix);
        Self { matrix, degrees }
    }
}

pub fn coupling_matrix(c: &Circuit) -> CouplingStrengthMatrix {
    CouplingStrengthMatrix::from_pairs(c.num_qubits, c.two_qubit_gates().map(|(a, b)| (a.0, b.0, 1)))
}

pub fn degree_list(m: &CouplingStrengthMatrix) -> CouplingDegreeList {
    let mut entries: Vec<(QubitId, u64)> = (0..m.n()).map(|q| (QubitId(q), m.degree(q))).collect();
    entries.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    CouplingDegreeList { entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Circuit;

    fn three_gate() -> Circuit {
        let mut c = Circuit::new("t", 3);
        c.cx(0, 1).cx(1, 0).cx(1, 2);
        c
    }

    #[test]
    fn hand_enumerated_matrix() {
        let m = coupling_matrix(&three_gate());
        assert_eq!(m.get(0, 1), 2);
        assert_eq!(m.get(1, 0), 2);
        assert_eq!(m.get(1, 2), 1);
        assert_eq!(m.get(0, 2), 0);
        assert_eq!(m.total(), 3);
    }

    #[test]
    fn row_sum_degrees() {
        let l = degree_list(&coupling_matrix(&three_gate()));
        assert_eq!(l.entries, vec![(QubitId(1), 3), (QubitId(0), 2), (QubitId(2), 1)]);
    }

    #[test]
    fn empty_profile() {
        let mut c = Circuit::new("h", 3);
        c.h(0).h(2);
        let m = coupling_matrix(&c);
        assert_eq!(m, CouplingStrengthMatrix::zeros(3));
        let l = degree_list(&m);
        assert_eq!(l.entries, vec![(QubitId(0), 0), (QubitId(1), 0), (QubitId(2), 0)]);
    }

    #[test]
    fn csv_dump() {
        let mut buf = Vec::new();
        coupling_matrix(&three_gate()).write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "q0,q1,q2\n0,2,0\n2,0,1\n0,1,0\n");
    }
}
