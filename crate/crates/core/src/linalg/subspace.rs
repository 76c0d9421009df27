use crate::error::{Error, Result};
use crate::linalg::eigen::eig_hermitian;
use crate::linalg::matrix::{inner, norm, ComplexMatrix, C64, ONE, ZERO};
use crate::linalg::state::StateVector;

/// Residual norm below which a Gram–Schmidt candidate counts as dependent.
pub const RANK_TOL: f64 = 1e-8;

/// Orthonormal basis of a subspace of C^n.
///
/// The projector is formed on request; large ambient spaces (constraint
/// networks up to 4096 amplitudes) only ever use [`Subspace::project`].
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<C64>>,
}

impl Subspace {
    pub fn empty(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self::computational(ambient_dim, &(0..ambient_dim).collect::<Vec<_>>())
    }

    /// Span of computational basis vectors. Duplicate indices are ignored.
    pub fn computational(ambient_dim: usize, indices: &[usize]) -> Self {
        let mut seen = vec![false; ambient_dim];
        let basis = indices
            .iter()
            .filter(|&&i| !std::mem::replace(&mut seen[i], true))
            .map(|&i| {
                let mut v = vec![ZERO; ambient_dim];
                v[i] = ONE;
                v
            })
            .collect();
        Self { ambient_dim, basis }
    }

    /// Orthonormalizes raw vectors by modified Gram–Schmidt (two passes).
    pub fn from_vectors(ambient_dim: usize, vectors: &[Vec<C64>]) -> Result<Self> {
        let mut basis: Vec<Vec<C64>> = Vec::with_capacity(vectors.len());
        for (index, v) in vectors.iter().enumerate() {
            if v.len() != ambient_dim {
                return Err(Error::DimensionMismatch(format!(
                    "vector {index} has dim {}, expected {ambient_dim}",
                    v.len()
                )));
            }
            let scale = norm(v);
            let mut w = v.clone();
            for _ in 0..2 {
                for b in &basis {
                    let overlap = inner(b, &w);
                    for (x, y) in w.iter_mut().zip(b) {
                        *x -= overlap * y;
                    }
                }
            }
            let residual = norm(&w);
            if residual <= RANK_TOL * scale.max(1.0) || scale == 0.0 {
                return Err(Error::RankDeficient { index, residual });
            }
            for x in &mut w {
                *x /= residual;
            }
            basis.push(w);
        }
        Ok(Self { ambient_dim, basis })
    }

    /// Span of arbitrary vectors; dependent ones are dropped instead of rejected.
    pub fn span(ambient_dim: usize, vectors: &[Vec<C64>]) -> Result<Self> {
        let mut out = Self::empty(ambient_dim);
        for v in vectors {
            let mut candidate = out.basis.clone();
            candidate.push(v.clone());
            match Self::from_vectors(ambient_dim, &candidate) {
                Ok(s) => out = s,
                Err(Error::RankDeficient { .. }) => {}
                Err(e) => return Err(e),
            }
        }
        Ok(out)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<C64>] {
        &self.basis
    }

    /// Basis vectors as the columns of an ambient_dim × rank matrix.
    pub fn basis_matrix(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(self.ambient_dim, self.rank());
        for (j, b) in self.basis.iter().enumerate() {
            for (i, &x) in b.iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        m
    }

    pub fn projector(&self) -> ComplexMatrix {
        let mut p = ComplexMatrix::zeros(self.ambient_dim, self.ambient_dim);
        for b in &self.basis {
            for (i, &x) in b.iter().enumerate() {
                if x == ZERO {
                    continue;
                }
                for (j, &y) in b.iter().enumerate() {
                    p[(i, j)] += x * y.conj();
                }
            }
        }
        p
    }

    /// Coordinates ⟨b_k|v⟩ in this basis.
    pub fn coordinates(&self, v: &[C64]) -> Vec<C64> {
        self.basis.iter().map(|b| inner(b, v)).collect()
    }

    /// Σ_k c_k |b_k⟩
    pub fn embed(&self, coords: &[C64]) -> Vec<C64> {
        let mut out = vec![ZERO; self.ambient_dim];
        for (b, &c) in self.basis.iter().zip(coords) {
            for (o, &x) in out.iter_mut().zip(b) {
                *o += c * x;
            }
        }
        out
    }

    pub fn project(&self, v: &[C64]) -> Vec<C64> {
        self.embed(&self.coordinates(v))
    }

    /// ‖(1 − P)v‖ ≤ tol·‖v‖
    pub fn contains(&self, v: &[C64], tol: f64) -> bool {
        let p = self.project(v);
        let out: f64 = v
            .iter()
            .zip(&p)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        out <= tol * norm(v).max(1.0)
    }

    /// Weight of `v` inside the subspace, ‖Pv‖².
    pub fn weight(&self, v: &[C64]) -> f64 {
        self.coordinates(v).iter().map(|c| c.norm_sqr()).sum()
    }
}

/// Subspace spanned by (not necessarily orthogonal) states.
pub fn projector_from_basis(vectors: &[StateVector]) -> Result<Subspace> {
    let Some(first) = vectors.first() else {
        return Err(Error::InvalidArgument("empty basis".into()));
    };
    let raw: Vec<Vec<C64>> = vectors.iter().map(|s| s.amplitudes().to_vec()).collect();
    Subspace::from_vectors(first.dim(), &raw)
}

/// Intersection of two subspaces.
///
/// Works in the coordinates of `a`: a unit vector v = B_a x lies in both
/// spaces exactly when x is an eigenvector of B_a† P_b B_a at eigenvalue 1,
/// which is the eigenvalue-2 space of P_a + P_b restricted to range(P_a).
pub fn subspace_intersect(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    if a.ambient_dim() != b.ambient_dim() {
        return Err(Error::DimensionMismatch(format!(
            "ambient dims {} and {}",
            a.ambient_dim(),
            b.ambient_dim()
        )));
    }
    if a.rank() == 0 || b.rank() == 0 {
        return Ok(Subspace::empty(a.ambient_dim()));
    }
    let k = a.rank();
    let projected: Vec<Vec<C64>> = a.basis().iter().map(|v| b.project(v)).collect();
    let mut m = ComplexMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            m[(i, j)] = inner(&a.basis()[i], &projected[j]);
        }
    }
    let eig = eig_hermitian(&m)?;
    let vectors: Vec<Vec<C64>> = eig
        .values
        .iter()
        .enumerate()
        .filter(|(_, &lambda)| lambda >= 1.0 - RANK_TOL)
        .map(|(col, _)| a.embed(&eig.vector(col)))
        .collect();
    if vectors.is_empty() {
        return Ok(Subspace::empty(a.ambient_dim()));
    }
    Subspace::from_vectors(a.ambient_dim(), &vectors)
}
