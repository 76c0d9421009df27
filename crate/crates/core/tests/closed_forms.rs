use std::f64::consts::{FRAC_PI_4, FRAC_PI_6, PI};

use watchdog_core::dynamics::{evolve_generator, not_gate_closed_form, EngineConfig};
use watchdog_core::fermion::{
    not_gate_generator, penalty_hamiltonian, PenaltyEnergies, QubitEmbedding,
};
use watchdog_core::linalg::matrix::{r, I, ZERO};
use watchdog_core::statistics::{
    rotation, sigma_y, symmetrize_drive, triplet_closed_form, triplet_generator,
};
use watchdog_core::{mat_exp, ComplexMatrix, Hamiltonian, StateVector};

fn printed_sigma_y() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[vec![ZERO, I], vec![-I, ZERO]])
}

/// [[cos, sin], [−sin, cos]] as printed for Q(ωt).
fn printed_q(angle: f64) -> ComplexMatrix {
    let (s, co) = angle.sin_cos();
    ComplexMatrix::from_real_rows(&[vec![co, s], vec![-s, co]])
}

#[test]
fn printed_sign_convention_rotates_backwards() {
    // The printed σ_y with U = exp(−iHt) does give the printed Q ...
    let h = Hamiltonian::new(printed_sigma_y()).unwrap();
    for t in [0.2, 0.9, 2.5] {
        assert!(mat_exp(&h, t).unwrap().approx_eq(&printed_q(t), 1e-12));
    }
    // ... but that Q takes cos ϑ|0⟩ + sin ϑ|1⟩ to angle ϑ − ωt, not ϑ + ωt.
    let (theta, t) = (0.3_f64, 0.5);
    let psi = [r(theta.cos()), r(theta.sin())];
    let out = printed_q(t).apply(&psi);
    assert!((out[0].re - (theta - t).cos()).abs() < 1e-15);
    assert!((out[1].re - (theta - t).sin()).abs() < 1e-15);
}

#[test]
fn standard_sigma_y_rotates_forwards() {
    let h = Hamiltonian::new(sigma_y()).unwrap();
    for t in [0.2, 0.9, 2.5] {
        let u = mat_exp(&h, t).unwrap();
        assert!(u.approx_eq(&rotation(t), 1e-12));
        assert!(u.approx_eq(&printed_q(t).transpose(), 1e-12));
    }
}

#[test]
fn symmetrized_drive_is_the_printed_matrix_up_to_sign() {
    let omega = 1.7;
    let ours = symmetrize_drive(&Hamiltonian::new(sigma_y().scale_real(omega)).unwrap(), 2).unwrap();
    let z = ZERO;
    let printed = ComplexMatrix::from_rows(&[
        vec![z, I, I, z],
        vec![-I, z, z, I],
        vec![-I, z, z, I],
        vec![z, -I, -I, z],
    ])
    .scale_real(0.5 * omega);
    assert!(ours.matrix().approx_eq(&printed.scale_real(-1.0), 1e-15));
}

#[test]
fn generator_reproduces_triplet_closed_form() {
    let cfg = EngineConfig { dt: 2.0 * PI / 100.0, total_time: 2.0 * PI, ..Default::default() };
    let g = triplet_generator(1.0).unwrap();
    let traj = evolve_generator(&triplet_closed_form(FRAC_PI_6, 1.0, 0.0), &g, &cfg).unwrap();
    assert_eq!(traj.len(), 101);
    assert!(traj.max_distance(|t| triplet_closed_form(FRAC_PI_6, 1.0, t)) < 1e-9);
}

#[test]
fn generator_reproduces_not_gate_closed_form() {
    let omega = 0.8;
    let cfg = EngineConfig { dt: 2.0 * PI / omega / 100.0, total_time: 2.0 * PI / omega, omega, ..Default::default() };
    let g = Hamiltonian::new(not_gate_generator(omega).unwrap()).unwrap();
    let traj = evolve_generator(&not_gate_closed_form(FRAC_PI_4, omega, 0.0), &g, &cfg).unwrap();
    assert!(traj.max_distance(|t| not_gate_closed_form(FRAC_PI_4, omega, t)) < 1e-9);
}

#[test]
fn penalty_is_silent_along_lifted_rotation() {
    let energies = PenaltyEnergies::new(1.0, 2.0, 3.0, 4.0, 0.5).unwrap();
    let h = penalty_hamiltonian(&energies);
    let emb = QubitEmbedding::new();
    for k in 0..50 {
        let t = k as f64 * 0.1;
        let lifted = emb.lift_state(&not_gate_closed_form(FRAC_PI_4, 1.0, t)).unwrap();
        assert!(lifted.expectation(h.matrix()).norm() < 1e-10);
    }
    // A forbidden configuration costs energy.
    let forbidden = emb
        .lift_state(&StateVector::with_dims(vec![r(1.0), r(0.0), r(0.0), r(0.0)], &[2, 2]).unwrap())
        .unwrap();
    assert!(forbidden.expectation(h.matrix()).re >= 0.5);
}
