use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::matrix::ComplexMatrix;
use crate::linalg::{Hamiltonian, Subspace};
use crate::statistics::sigma_y;

use super::{bit, bitstring, constrained_subspace, ConstraintNetwork, DiagonalHamiltonian};

/// Ambient dimension up to which [`EmbeddedDrive::full_generator`] builds a dense matrix.
pub const DENSE_LIMIT: usize = 1024;

/// A single-qubit drive lifted into the constrained subspace.
///
/// Each satisfying assignment is paired with the nearest satisfying
/// assignment of opposite driven bit; the generator acts as ω σ_y on every
/// pair (bit-0 member first) and is written in the coordinates of the
/// constrained subspace (ascending assignment order).
#[derive(Debug, Clone)]
pub struct EmbeddedDrive {
    pub n_qubits: usize,
    pub driven_qubit: usize,
    pub omega: f64,
    pub assignments: Vec<usize>,
    /// (bit-0 assignment, bit-1 assignment)
    pub pairs: Vec<(usize, usize)>,
    pub unmatched: Vec<usize>,
    pub subspace: Subspace,
    pub generator: Hamiltonian,
}

impl EmbeddedDrive {
    pub fn is_total(&self) -> bool {
        self.unmatched.is_empty()
    }

    /// B G B† on the full 2^n space.
    pub fn full_generator(&self) -> Result<ComplexMatrix> {
        let n = 1usize << self.n_qubits;
        if n > DENSE_LIMIT {
            return Err(Error::InvalidArgument(format!(
                "dense generator of dim {n} exceeds {DENSE_LIMIT}"
            )));
        }
        let mut g = ComplexMatrix::zeros(n, n);
        let sub = self.generator.matrix();
        for (i, &x) in self.assignments.iter().enumerate() {
            for (j, &y) in self.assignments.iter().enumerate() {
                g[(x, y)] = sub[(i, j)];
            }
        }
        Ok(g)
    }

    /// ‖[G, H]‖_F without forming dense matrices.
    pub fn commutator_norm(&self, h: &DiagonalHamiltonian) -> f64 {
        let d = h.diagonal();
        let sub = self.generator.matrix();
        let mut s = 0.0;
        for (i, &x) in self.assignments.iter().enumerate() {
            for (j, &y) in self.assignments.iter().enumerate() {
                s += (sub[(i, j)] * (d[y] - d[x])).norm_sqr();
            }
        }
        s.sqrt()
    }
}

pub fn embed_drive(net: &ConstraintNetwork, driven: usize, omega: f64) -> Result<EmbeddedDrive> {
    let n = net.n_qubits();
    if driven >= n {
        return Err(Error::InvalidArgument(format!(
            "driven qubit {driven} outside a {n}-qubit network"
        )));
    }
    if !omega.is_finite() {
        return Err(Error::InvalidArgument("drive frequency must be finite".into()));
    }
    let cs = constrained_subspace(net)?;
    if !cs.is_satisfiable() {
        return Err(Error::Unsatisfiable);
    }

    let mut partner: BTreeMap<usize, usize> = BTreeMap::new();
    let mut unmatched = Vec::new();
    for &x in &cs.assignments {
        let b = bit(x, driven, n);
        let opposite: Vec<(usize, u32)> = cs
            .assignments
            .iter()
            .filter(|&&y| bit(y, driven, n) != b)
            .map(|&y| (y, (x ^ y).count_ones()))
            .collect();
        let Some(dmin) = opposite.iter().map(|&(_, d)| d).min() else {
            unmatched.push(x);
            continue;
        };
        let nearest: Vec<usize> = opposite
            .iter()
            .filter(|&&(_, d)| d == dmin)
            .map(|&(y, _)| y)
            .collect();
        if nearest.len() > 1 {
            return Err(Error::AmbiguousPairing {
                assignment: bitstring(x, n),
                candidates: nearest.len(),
                distance: dmin,
            });
        }
        partner.insert(x, nearest[0]);
    }

    // The nearest-partner map must be an involution to form disjoint pairs.
    let mut pairs = Vec::new();
    for (&x, &y) in &partner {
        if partner.get(&y) != Some(&x) {
            let claimants = partner.values().filter(|&&v| v == y).count();
            return Err(Error::AmbiguousPairing {
                assignment: bitstring(y, n),
                candidates: claimants.max(2),
                distance: (x ^ y).count_ones(),
            });
        }
        if bit(x, driven, n) == 0 {
            pairs.push((x, y));
        }
    }

    let m = cs.rank();
    let index = |a: usize| cs.assignments.binary_search(&a).expect("satisfying assignment");
    let sy = sigma_y();
    let mut g = ComplexMatrix::zeros(m, m);
    for &(x0, x1) in &pairs {
        let (i0, i1) = (index(x0), index(x1));
        g[(i0, i1)] = sy[(0, 1)] * omega;
        g[(i1, i0)] = sy[(1, 0)] * omega;
    }

    Ok(EmbeddedDrive {
        n_qubits: n,
        driven_qubit: driven,
        omega,
        assignments: cs.assignments,
        pairs,
        unmatched,
        subspace: cs.subspace,
        generator: Hamiltonian::new(g)?,
    })
}
