//! Dense complex linear algebra for small Hilbert spaces.

pub mod eigen;
pub mod expm;
pub mod hamiltonian;
pub mod matrix;
pub mod state;
pub mod subspace;

pub use eigen::{eig_diagonal, eig_hermitian, Eigen};
pub use expm::mat_exp;
pub use hamiltonian::Hamiltonian;
pub use matrix::{inner, kron_all, norm, ComplexMatrix, C64};
pub use state::{product_labels, reduced_diagonal, DensityMatrix, StateVector};
pub use subspace::{projector_from_basis, subspace_intersect, Subspace};
