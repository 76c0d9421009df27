//! Two-particle permutation symmetry and single-particle drives.
//!
//! Single-particle spaces are either a qubit (dim 2) or spin × site (dim 4,
//! index = 2·λ + χ with the site λ ∈ {r, s} as the slow index), so the
//! one-particle basis order is (0r, 1r, 0s, 1s).

use crate::error::{Error, Result};
use crate::linalg::matrix::{kron_all, ComplexMatrix, C64, I, ZERO};
use crate::linalg::{Hamiltonian, StateVector, Subspace};

/// Pauli σ_y = [[0, −i], [i, 0]].
///
/// With U(t) = exp(−iHt), the drive ω σ_y turns cos ϑ|0⟩ + sin ϑ|1⟩ into
/// cos(ϑ+ωt)|0⟩ + sin(ϑ+ωt)|1⟩.
pub fn sigma_y() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[vec![ZERO, -I], vec![I, ZERO]])
}

/// exp(−iφσ_y) = [[cos φ, −sin φ], [sin φ, cos φ]].
pub fn rotation(angle: f64) -> ComplexMatrix {
    let (s, c) = angle.sin_cos();
    ComplexMatrix::from_real_rows(&[vec![c, -s], vec![s, c]])
}

/// P₁₂|i⟩|j⟩ = |j⟩|i⟩ on C^d ⊗ C^d.
pub fn swap_operator(d: usize) -> ComplexMatrix {
    let mut p = ComplexMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            p[(j * d + i, i * d + j)] = C64::new(1.0, 0.0);
        }
    }
    p
}

/// Two identical particles with `per_particle_dim` levels each.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwoParticleSpace {
    per_particle_dim: usize,
}

impl TwoParticleSpace {
    pub fn new(per_particle_dim: usize) -> Result<Self> {
        if per_particle_dim < 2 {
            return Err(Error::InvalidArgument(format!(
                "per-particle dim must be at least 2, got {per_particle_dim}"
            )));
        }
        Ok(Self { per_particle_dim })
    }

    pub fn qubits() -> Self {
        Self { per_particle_dim: 2 }
    }

    pub fn spin_site() -> Self {
        Self { per_particle_dim: 4 }
    }

    pub fn per_particle_dim(&self) -> usize {
        self.per_particle_dim
    }

    pub fn ambient_dim(&self) -> usize {
        self.per_particle_dim * self.per_particle_dim
    }

    pub fn dims(&self) -> [usize; 2] {
        [self.per_particle_dim; 2]
    }

    pub fn swap(&self) -> ComplexMatrix {
        swap_operator(self.per_particle_dim)
    }

    /// S₁₂ = (1 + P₁₂)/2
    pub fn symmetrizer(&self) -> ComplexMatrix {
        let n = self.ambient_dim();
        (&ComplexMatrix::identity(n) + &self.swap()).scale_real(0.5)
    }

    /// A₁₂ = (1 − P₁₂)/2
    pub fn antisymmetrizer(&self) -> ComplexMatrix {
        let n = self.ambient_dim();
        (&ComplexMatrix::identity(n) - &self.swap()).scale_real(0.5)
    }

    /// Basis |ii⟩, (|ij⟩+|ji⟩)/√2 for i < j, in lexicographic order.
    pub fn symmetric_subspace(&self) -> Subspace {
        self.pair_subspace(true)
    }

    /// Basis (|ij⟩−|ji⟩)/√2 for i < j, in lexicographic order.
    pub fn antisymmetric_subspace(&self) -> Subspace {
        self.pair_subspace(false)
    }

    fn pair_subspace(&self, symmetric: bool) -> Subspace {
        let d = self.per_particle_dim;
        let n = d * d;
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut vectors = Vec::new();
        for i in 0..d {
            for j in i..d {
                let mut v = vec![ZERO; n];
                if i == j {
                    if !symmetric {
                        continue;
                    }
                    v[i * d + i] = C64::new(1.0, 0.0);
                } else {
                    v[i * d + j] = C64::new(h, 0.0);
                    v[j * d + i] = C64::new(if symmetric { h } else { -h }, 0.0);
                }
                vectors.push(v);
            }
        }
        Subspace::from_vectors(n, &vectors).expect("pair states are orthonormal")
    }

    pub fn labels(&self) -> Vec<String> {
        let single = single_particle_labels(self.per_particle_dim);
        let mut out = Vec::with_capacity(self.ambient_dim());
        for a in &single {
            for b in &single {
                out.push(format!("|{a}⟩_1|{b}⟩_2"));
            }
        }
        out
    }
}

fn single_particle_labels(d: usize) -> Vec<String> {
    if d == 4 {
        ["0r", "1r", "0s", "1s"].iter().map(|s| s.to_string()).collect()
    } else {
        (0..d).map(|i| i.to_string()).collect()
    }
}

/// Triplet trajectory of two identically driven qubits:
/// cos²φ|00⟩ + sin φ cos φ (|01⟩ + |10⟩) + sin²φ|11⟩ with φ = ϑ + ωt.
///
/// The middle term is stored as two equal amplitudes so the vector is
/// exactly normalized.
pub fn triplet_closed_form(theta0: f64, omega: f64, t: f64) -> StateVector {
    let (s, c) = (theta0 + omega * t).sin_cos();
    let amps = vec![
        C64::new(c * c, 0.0),
        C64::new(s * c, 0.0),
        C64::new(s * c, 0.0),
        C64::new(s * s, 0.0),
    ];
    StateVector::new(amps, TwoParticleSpace::qubits().labels()).expect("unit vector")
}

/// Parameters of a single-particle rotation drive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriveSpec {
    pub omega: f64,
    pub theta0: f64,
    /// 1-based particle label.
    pub target: usize,
}

/// G_j = ω σ_y on particle `target`, identity on the others. For spin × site
/// particles σ_y acts on the spin factor only.
pub fn single_drive(
    spec: &DriveSpec,
    n_particles: usize,
    per_particle_dim: usize,
) -> Result<Hamiltonian> {
    if spec.target == 0 || spec.target > n_particles {
        return Err(Error::InvalidTarget {
            target: spec.target,
            n_particles,
        });
    }
    if !spec.omega.is_finite() {
        return Err(Error::InvalidArgument(format!("omega {} is not finite", spec.omega)));
    }
    let local = single_particle_sigma_y(per_particle_dim)?.scale_real(spec.omega);
    let factors: Vec<ComplexMatrix> = (1..=n_particles)
        .map(|p| {
            if p == spec.target {
                local.clone()
            } else {
                ComplexMatrix::identity(per_particle_dim)
            }
        })
        .collect();
    Hamiltonian::new(kron_all(&factors))
}

/// σ_y on the spin factor of a one-particle space (dim 2 or 4).
pub fn single_particle_sigma_y(per_particle_dim: usize) -> Result<ComplexMatrix> {
    match per_particle_dim {
        2 => Ok(sigma_y()),
        4 => Ok(ComplexMatrix::identity(2).kron(&sigma_y())),
        d => Err(Error::InvalidArgument(format!(
            "no spin factor for per-particle dim {d}"
        ))),
    }
}

/// ½(G ⊗ 1 + 1 ⊗ G) for a one-particle generator G.
pub fn symmetrize_drive(g: &Hamiltonian, per_particle_dim: usize) -> Result<Hamiltonian> {
    if g.dim() != per_particle_dim {
        return Err(Error::DimensionMismatch(format!(
            "one-particle generator of dim {} for per-particle dim {per_particle_dim}",
            g.dim()
        )));
    }
    let id = ComplexMatrix::identity(per_particle_dim);
    let sum = &g.matrix().kron(&id) + &id.kron(g.matrix());
    Hamiltonian::new(sum.scale_real(0.5))
}

/// G_1 + G_2 for a common ω σ_y drive: the generator of Q(ωt) ⊗ Q(ωt),
/// i.e. twice [`symmetrize_drive`] of the one-particle drive.
pub fn triplet_generator(omega: f64) -> Result<Hamiltonian> {
    let g = Hamiltonian::new(sigma_y().scale_real(omega))?;
    Ok(symmetrize_drive(&g, 2)?.scale(2.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::{c, r};
    use crate::linalg::{eig_hermitian, mat_exp};

    fn rank(p: &ComplexMatrix) -> usize {
        eig_hermitian(p)
            .unwrap()
            .values
            .iter()
            .filter(|&&x| x > 0.5)
            .count()
    }

    #[test]
    fn swap_exchanges_qubits() {
        let p = swap_operator(2);
        let v01 = vec![r(0.0), r(1.0), r(0.0), r(0.0)];
        assert_eq!(p.apply(&v01), vec![r(0.0), r(0.0), r(1.0), r(0.0)]);
        assert!(p.matmul(&p).approx_eq(&ComplexMatrix::identity(4), 0.0));
    }

    #[test]
    fn qubit_symmetrizer_ranks() {
        let sp = TwoParticleSpace::qubits();
        assert_eq!(rank(&sp.symmetrizer()), 3);
        assert_eq!(rank(&sp.antisymmetrizer()), 1);
    }

    #[test]
    fn spin_site_antisymmetrizer_has_six_states() {
        let sp = TwoParticleSpace::spin_site();
        assert_eq!(rank(&sp.antisymmetrizer()), 6);
        assert_eq!(sp.antisymmetric_subspace().rank(), 6);
        assert_eq!(sp.symmetric_subspace().rank(), 10);
    }

    #[test]
    fn symmetrizers_are_complementary() {
        for d in [2, 3, 4] {
            let sp = TwoParticleSpace::new(d).unwrap();
            let (s, a) = (sp.symmetrizer(), sp.antisymmetrizer());
            let n = sp.ambient_dim();
            assert!((&s + &a).approx_eq(&ComplexMatrix::identity(n), 1e-15));
            assert!(s.matmul(&a).approx_eq(&ComplexMatrix::zeros(n, n), 1e-15));
        }
    }

    #[test]
    fn triplet_projector_equals_swap_construction() {
        let sp = TwoParticleSpace::qubits();
        assert!(sp
            .symmetric_subspace()
            .projector()
            .approx_eq(&sp.symmetrizer(), 1e-15));
    }

    #[test]
    fn triplet_at_origin_is_00() {
        let s = triplet_closed_form(0.0, 1.0, 0.0);
        assert_eq!(s.amplitudes(), &[r(1.0), r(0.0), r(0.0), r(0.0)]);
    }

    #[test]
    fn triplet_at_quarter_turn_is_uniform() {
        let s = triplet_closed_form(0.1, 2.0, (std::f64::consts::FRAC_PI_4 - 0.1) / 2.0);
        for a in s.amplitudes() {
            assert!((a - r(0.5)).norm() < 1e-15);
        }
    }

    #[test]
    fn drive_on_particle_one() {
        let spec = DriveSpec { omega: 0.7, theta0: 0.0, target: 1 };
        let g = single_drive(&spec, 2, 2).unwrap();
        let expected = sigma_y().kron(&ComplexMatrix::identity(2)).scale_real(0.7);
        assert!(g.matrix().approx_eq(&expected, 0.0));
    }

    #[test]
    fn drive_rotates_only_its_target() {
        let spec = DriveSpec { omega: 1.0, theta0: 0.0, target: 1 };
        let u = mat_exp(&single_drive(&spec, 2, 2).unwrap(), 0.3).unwrap();
        // |0⟩|1⟩ → (cos .3|0⟩ + sin .3|1⟩)|1⟩
        let out = u.apply(&[r(0.0), r(1.0), r(0.0), r(0.0)]);
        let expected = [r(0.0), r(0.3_f64.cos()), r(0.0), r(0.3_f64.sin())];
        for (a, b) in out.iter().zip(&expected) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn drive_on_particle_two_is_swap_conjugate() {
        let g1 = single_drive(&DriveSpec { omega: 1.3, theta0: 0.0, target: 1 }, 2, 2).unwrap();
        let g2 = single_drive(&DriveSpec { omega: 1.3, theta0: 0.0, target: 2 }, 2, 2).unwrap();
        let p = swap_operator(2);
        assert!(p.matmul(g1.matrix()).matmul(&p).approx_eq(g2.matrix(), 1e-15));
    }

    #[test]
    fn invalid_target_rejected() {
        let spec = DriveSpec { omega: 1.0, theta0: 0.0, target: 3 };
        assert_eq!(
            single_drive(&spec, 2, 2).unwrap_err(),
            Error::InvalidTarget { target: 3, n_particles: 2 }
        );
        let spec = DriveSpec { target: 0, ..spec };
        assert!(single_drive(&spec, 2, 2).is_err());
    }

    #[test]
    fn spin_site_drive_acts_on_spin_only() {
        let g = single_particle_sigma_y(4).unwrap();
        // |0r⟩ (index 0) couples only to |1r⟩ (index 1)
        assert_eq!(g[(1, 0)], c(0.0, 1.0));
        assert_eq!(g[(2, 0)], r(0.0));
        assert_eq!(g[(3, 2)], c(0.0, 1.0));
    }

    #[test]
    fn symmetrize_zero_is_zero() {
        let z = symmetrize_drive(&Hamiltonian::zero(2), 2).unwrap();
        assert!(z.matrix().approx_eq(&ComplexMatrix::zeros(4, 4), 0.0));
    }

    #[test]
    fn symmetrize_checks_dimension() {
        assert!(matches!(
            symmetrize_drive(&Hamiltonian::zero(3), 2),
            Err(Error::DimensionMismatch(_))
        ));
    }
    #[test]
    fn symmetrized_sigma_y_rotates_each_particle_by_half_angle() {
        let g = symmetrize_drive(&Hamiltonian::new(sigma_y()).unwrap(), 2).unwrap();
        for t in [0.3, 1.1, 2.9] {
            let u = mat_exp(&g, t).unwrap();
            let half = rotation(t / 2.0);
            assert!(u.approx_eq(&half.kron(&half), 1e-12));
        }
    }

    #[test]
    fn triplet_generator_rotates_both_by_full_angle() {
        let g = triplet_generator(0.8).unwrap();
        for t in [0.3, 1.1, 2.9] {
            let q = rotation(0.8 * t);
            assert!(mat_exp(&g, t).unwrap().approx_eq(&q.kron(&q), 1e-12));
        }
        assert!(g.matrix().commutator(&swap_operator(2)).max_abs() < 1e-15);
    }
}
