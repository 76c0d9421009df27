use crate::error::{Error, Result};
use crate::linalg::matrix::ComplexMatrix;

pub const HERMITIAN_TOL: f64 = 1e-12;

/// Hermitian generator with the convention U(t) = exp(−iHt).
#[derive(Debug, Clone, PartialEq)]
pub struct Hamiltonian(ComplexMatrix);

impl Hamiltonian {
    /// Accepts `m` if it is Hermitian to 1e-12 relative to its largest entry.
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        let dev = m.hermitian_deviation();
        if dev > HERMITIAN_TOL * m.max_abs().max(1.0) {
            return Err(Error::NotHermitian { deviation: dev });
        }
        Ok(Self(m))
    }

    pub fn zero(dim: usize) -> Self {
        Self(ComplexMatrix::zeros(dim, dim))
    }

    pub fn diagonal(values: &[f64]) -> Self {
        Self(ComplexMatrix::from_real_diagonal(values))
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.scale_real(s))
    }
}

impl AsRef<ComplexMatrix> for Hamiltonian {
    fn as_ref(&self) -> &ComplexMatrix {
        &self.0
    }
}
