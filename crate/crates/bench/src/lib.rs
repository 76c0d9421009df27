//! Inputs shared by the criterion benches.

use std::f64::consts::FRAC_PI_6;

use watchdog_core::dynamics::{DiagonalTarget, EngineConfig, EngineKind};
use watchdog_core::linalg::matrix::c;
use watchdog_core::statistics::{triplet_closed_form, TwoParticleSpace};
use watchdog_core::{ComplexMatrix, Hamiltonian, StateVector, Subspace};

/// Deterministic dense Hermitian matrix with O(1) entries.
pub fn dense_hermitian(n: usize) -> Hamiltonian {
    let mut m = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let x = ((i * 31 + j * 17) % 13) as f64 / 13.0 - 0.5;
            let y = if i == j { 0.0 } else { ((i * 7 + j * 3) % 11) as f64 / 11.0 - 0.5 };
            m[(i, j)] = c(x, y);
            m[(j, i)] = c(x, -y);
        }
    }
    Hamiltonian::new(m).expect("Hermitian by construction")
}

pub struct TripletCase {
    pub state0: StateVector,
    pub target: DiagonalTarget,
    pub space: Subspace,
    pub cfg: EngineConfig,
}

/// Engine C on the triplet: the non-commuting (stationary) solver path.
pub fn triplet_variational(dt: f64) -> TripletCase {
    TripletCase {
        state0: triplet_closed_form(FRAC_PI_6, 1.0, 0.0),
        target: DiagonalTarget::on_subsystem(&[2, 2], 0, FRAC_PI_6, 1.0).expect("valid target"),
        space: TwoParticleSpace::qubits().symmetric_subspace(),
        cfg: EngineConfig { dt, total_time: 1.0, engine: EngineKind::Variational, ..Default::default() },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_valid() {
        assert!(dense_hermitian(8).matrix().is_hermitian(0.0));
        let case = triplet_variational(0.1);
        assert!(case.space.contains(case.state0.amplitudes(), 1e-12));
    }
}
