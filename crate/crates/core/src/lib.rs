//! Numerical laboratory for continuous-projection ("watchdog") dynamics.
//!
//! * [`linalg`]: dense complex matrices, states, subspaces, propagators.
//! * [`statistics`]: permutation symmetry of two particles, the triplet
//!   closed form and single-particle drives.
//! * [`fermion`]: four-mode Fock space, the penalty Hamiltonian and the
//!   qubit-sector embedding.
//! * [`dynamics`]: projective (Zeno), generator and variational engines.
//! * [`network`]: Boolean constraint networks as subspaces and drives.

pub mod dynamics;
pub mod error;
pub mod fermion;
pub mod linalg;
pub mod network;
pub mod statistics;

pub use error::{Error, Result};
pub use linalg::{
    eig_hermitian, mat_exp, projector_from_basis, subspace_intersect, ComplexMatrix, DensityMatrix,
    Eigen, Hamiltonian, StateVector, Subspace, C64,
};
