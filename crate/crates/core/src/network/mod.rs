//! Boolean constraint networks over coexisting qubits.
//!
//! Qubit `q` of an `n`-qubit network is bit `n − 1 − q` of a basis index, so
//! basis labels read q0 q1 … left to right and a two-qubit network on
//! (r, s) = (q0, q1) uses the order |00⟩, |01⟩, |10⟩, |11⟩.

mod embed;
mod experiment;
mod parse;

pub use embed::{embed_drive, EmbeddedDrive};
pub use experiment::{
    drive_output_experiment, scaling_experiment, ExperimentEngine, ExperimentRecord,
    ExperimentStatus, ScalingRow, ScalingTable, SUCCESS_THRESHOLD,
};
pub use parse::{format_network, parse_network};

use crate::error::{Error, Result};
use crate::linalg::matrix::C64;
use crate::linalg::{Hamiltonian, Subspace};

pub const MAX_QUBITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementKind {
    Not,
    Wire,
    Pin(u8),
    Custom,
}

/// A gate or wire: the set of allowed bit tuples over an ordered qubit tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintElement {
    qubits: Vec<usize>,
    allowed: Vec<Vec<u8>>,
    kind: ElementKind,
}

impl ConstraintElement {
    pub fn not(a: usize, b: usize) -> Self {
        Self {
            qubits: vec![a, b],
            allowed: vec![vec![0, 1], vec![1, 0]],
            kind: ElementKind::Not,
        }
    }

    pub fn wire(a: usize, b: usize) -> Self {
        Self {
            qubits: vec![a, b],
            allowed: vec![vec![0, 0], vec![1, 1]],
            kind: ElementKind::Wire,
        }
    }

    pub fn pin(q: usize, value: u8) -> Self {
        let v = value & 1;
        Self {
            qubits: vec![q],
            allowed: vec![vec![v]],
            kind: ElementKind::Pin(v),
        }
    }

    /// Arbitrary truth table. Rows must match the tuple length and hold 0/1.
    pub fn custom(qubits: Vec<usize>, allowed: Vec<Vec<u8>>) -> Result<Self> {
        if qubits.is_empty() {
            return Err(Error::InvalidArgument("element has no qubits".into()));
        }
        if allowed.is_empty() {
            return Err(Error::InvalidArgument("element allows no assignment".into()));
        }
        for row in &allowed {
            if row.len() != qubits.len() || row.iter().any(|&b| b > 1) {
                return Err(Error::InvalidArgument(format!(
                    "allowed row {row:?} does not fit {} qubits",
                    qubits.len()
                )));
            }
        }
        let mut allowed = allowed;
        allowed.sort();
        allowed.dedup();
        Ok(Self {
            qubits,
            allowed,
            kind: ElementKind::Custom,
        })
    }

    pub fn qubits(&self) -> &[usize] {
        &self.qubits
    }

    pub fn allowed(&self) -> &[Vec<u8>] {
        &self.allowed
    }

    pub fn kind(&self) -> ElementKind {
        self.kind
    }

    fn accepts(&self, assignment: usize, n_qubits: usize) -> bool {
        let local: Vec<u8> = self
            .qubits
            .iter()
            .map(|&q| bit(assignment, q, n_qubits))
            .collect();
        self.allowed.iter().any(|row| *row == local)
    }
}

/// Value of qubit `q` in basis index `assignment`.
pub fn bit(assignment: usize, q: usize, n_qubits: usize) -> u8 {
    ((assignment >> (n_qubits - 1 - q)) & 1) as u8
}

pub fn bitstring(assignment: usize, n_qubits: usize) -> String {
    (0..n_qubits)
        .map(|q| if bit(assignment, q, n_qubits) == 1 { '1' } else { '0' })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintNetwork {
    n_qubits: usize,
    elements: Vec<ConstraintElement>,
    penalty_energy: f64,
}

impl ConstraintNetwork {
    pub fn new(n_qubits: usize, elements: Vec<ConstraintElement>, penalty_energy: f64) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::InvalidArgument("network has no qubits".into()));
        }
        if n_qubits > MAX_QUBITS {
            return Err(Error::SizeLimit {
                n_qubits,
                limit: MAX_QUBITS,
            });
        }
        if !(penalty_energy > 0.0) || !penalty_energy.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "penalty energy {penalty_energy} must be positive"
            )));
        }
        for (i, e) in elements.iter().enumerate() {
            if let Some(&q) = e.qubits().iter().find(|&&q| q >= n_qubits) {
                return Err(Error::InvalidArgument(format!(
                    "element {i} uses qubit {q} but the network has {n_qubits}"
                )));
            }
        }
        Ok(Self {
            n_qubits,
            elements,
            penalty_energy,
        })
    }

    /// NOT(q_i, q_{i+1}) for i < k, on k + 1 qubits.
    pub fn not_chain(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("chain needs at least one gate".into()));
        }
        let elements = (0..k).map(|i| ConstraintElement::not(i, i + 1)).collect();
        Self::new(k + 1, elements, 1.0)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    pub fn elements(&self) -> &[ConstraintElement] {
        &self.elements
    }

    pub fn penalty_energy(&self) -> f64 {
        self.penalty_energy
    }

    pub fn with_element(mut self, e: ConstraintElement) -> Result<Self> {
        self.elements.push(e);
        Self::new(self.n_qubits, self.elements, self.penalty_energy)
    }

    pub fn violations(&self, assignment: usize) -> usize {
        self.elements
            .iter()
            .filter(|e| !e.accepts(assignment, self.n_qubits))
            .count()
    }

    pub fn satisfies(&self, assignment: usize) -> bool {
        self.violations(assignment) == 0
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.dim())
            .map(|x| format!("|{}⟩", bitstring(x, self.n_qubits)))
            .collect()
    }
}

/// Satisfying assignments (ascending) and the subspace they span.
#[derive(Debug, Clone)]
pub struct ConstrainedSpace {
    pub subspace: Subspace,
    pub assignments: Vec<usize>,
}

impl ConstrainedSpace {
    pub fn is_satisfiable(&self) -> bool {
        !self.assignments.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.assignments.len()
    }
}

pub fn constrained_subspace(net: &ConstraintNetwork) -> Result<ConstrainedSpace> {
    let assignments: Vec<usize> = (0..net.dim()).filter(|&x| net.satisfies(x)).collect();
    Ok(ConstrainedSpace {
        subspace: Subspace::computational(net.dim(), &assignments),
        assignments,
    })
}

/// Diagonal operator stored by its diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalHamiltonian {
    diag: Vec<f64>,
}

impl DiagonalHamiltonian {
    pub fn new(diag: Vec<f64>) -> Self {
        Self { diag }
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diag
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn to_dense(&self) -> Hamiltonian {
        Hamiltonian::diagonal(&self.diag)
    }

    pub fn ground_energy(&self) -> f64 {
        self.diag.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Basis indices at the ground energy (within 1e-12).
    pub fn ground_indices(&self) -> Vec<usize> {
        let e0 = self.ground_energy();
        (0..self.dim())
            .filter(|&i| self.diag[i] - e0 <= 1e-12)
            .collect()
    }

    pub fn expectation(&self, v: &[C64]) -> f64 {
        self.diag.iter().zip(v).map(|(h, a)| h * a.norm_sqr()).sum()
    }
}

/// Penalty energy × number of violated elements, per basis state.
pub fn network_penalty_hamiltonian(net: &ConstraintNetwork) -> Result<DiagonalHamiltonian> {
    let diag = (0..net.dim())
        .map(|x| net.penalty_energy() * net.violations(x) as f64)
        .collect();
    Ok(DiagonalHamiltonian::new(diag))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_not_gate() {
        let net = ConstraintNetwork::new(2, vec![ConstraintElement::not(0, 1)], 1.0).unwrap();
        let cs = constrained_subspace(&net).unwrap();
        assert_eq!(cs.assignments, vec![0b01, 0b10]);
        assert_eq!(cs.subspace.rank(), 2);
    }

    #[test]
    fn not_chain_alternates() {
        for k in 1..=6 {
            let net = ConstraintNetwork::not_chain(k).unwrap();
            let cs = constrained_subspace(&net).unwrap();
            let strings: Vec<String> = cs.assignments.iter().map(|&x| bitstring(x, k + 1)).collect();
            let alt = |start: usize| -> String {
                (0..=k).map(|i| if (i + start) % 2 == 0 { '0' } else { '1' }).collect()
            };
            assert_eq!(strings, vec![alt(0), alt(1)]);
        }
    }

    #[test]
    fn contradiction_is_unsatisfiable() {
        let net = ConstraintNetwork::new(
            2,
            vec![ConstraintElement::not(0, 1), ConstraintElement::wire(0, 1)],
            1.0,
        )
        .unwrap();
        let cs = constrained_subspace(&net).unwrap();
        assert!(!cs.is_satisfiable());
        assert_eq!(cs.subspace.rank(), 0);
        let h = network_penalty_hamiltonian(&net).unwrap();
        assert!(h.ground_energy() >= net.penalty_energy());
    }

    #[test]
    fn not_gate_penalty_diagonal() {
        let net = ConstraintNetwork::new(2, vec![ConstraintElement::not(0, 1)], 1.0).unwrap();
        let h = network_penalty_hamiltonian(&net).unwrap();
        assert_eq!(h.diagonal(), &[1.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn chain_three_ground_degeneracy() {
        let h = network_penalty_hamiltonian(&ConstraintNetwork::not_chain(3).unwrap()).unwrap();
        assert_eq!(h.ground_energy(), 0.0);
        assert_eq!(h.ground_indices(), vec![0b0101, 0b1010]);
    }

    #[test]
    fn size_limit_enforced() {
        assert_eq!(
            ConstraintNetwork::new(13, vec![], 1.0).unwrap_err(),
            Error::SizeLimit { n_qubits: 13, limit: 12 }
        );
        assert!(ConstraintNetwork::not_chain(12).is_err());
    }

    #[test]
    fn out_of_range_qubit_rejected() {
        assert!(ConstraintNetwork::new(2, vec![ConstraintElement::not(1, 2)], 1.0).is_err());
    }

    #[test]
    fn custom_rows_validated() {
        assert!(ConstraintElement::custom(vec![0, 1], vec![vec![0]]).is_err());
        assert!(ConstraintElement::custom(vec![0, 1], vec![]).is_err());
        assert!(ConstraintElement::custom(vec![0], vec![vec![2]]).is_err());
        let e = ConstraintElement::custom(vec![0, 1], vec![vec![1, 1], vec![0, 0], vec![1, 1]]).unwrap();
        assert_eq!(e.allowed(), &[vec![0, 0], vec![1, 1]]);
    }

    #[test]
    fn pin_restricts_one_qubit() {
        let net = ConstraintNetwork::not_chain(2)
            .unwrap()
            .with_element(ConstraintElement::pin(0, 1))
            .unwrap();
        let cs = constrained_subspace(&net).unwrap();
        assert_eq!(cs.assignments, vec![0b101]);
    }
}
