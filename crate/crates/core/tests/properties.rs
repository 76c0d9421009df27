use proptest::prelude::*;
use watchdog_core::dynamics::{evolve_variational, DiagonalTarget, EngineConfig, EngineKind};
use watchdog_core::linalg::matrix::{c, kron_all};
use watchdog_core::linalg::{product_labels, DensityMatrix};
use watchdog_core::network::{constrained_subspace, embed_drive, network_penalty_hamiltonian, ConstraintElement, ConstraintNetwork};
use watchdog_core::statistics::{swap_operator, symmetrize_drive, TwoParticleSpace};
use watchdog_core::{mat_exp, ComplexMatrix, Hamiltonian, StateVector, Subspace, C64};

fn complex() -> impl Strategy<Value = C64> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(a, b)| c(a, b))
}

fn matrix(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec(complex(), n * n).prop_map(move |d| ComplexMatrix::new(n, n, d).unwrap())
}

fn hermitian(n: usize) -> impl Strategy<Value = Hamiltonian> {
    matrix(n).prop_map(|m| Hamiltonian::new((&m + &m.dagger()).scale_real(0.5)).unwrap())
}

fn state(n: usize) -> impl Strategy<Value = Vec<C64>> {
    prop::collection::vec(complex(), n).prop_filter("non-zero", |v| v.iter().map(|x| x.norm_sqr()).sum::<f64>() > 1e-3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mat_exp_is_a_one_parameter_group(h in hermitian(4), s in -3.0..3.0f64, t in -3.0..3.0f64) {
        let us = mat_exp(&h, s).unwrap();
        let ut = mat_exp(&h, t).unwrap();
        let ust = mat_exp(&h, s + t).unwrap();
        prop_assert!(us.matmul(&ut).approx_eq(&ust, 1e-10));
        prop_assert!(ust.is_unitary(1e-12));
    }

    #[test]
    fn mat_exp_inverse(h in hermitian(3), t in -5.0..5.0f64) {
        let u = mat_exp(&h, t).unwrap();
        prop_assert!(u.matmul(&mat_exp(&h, -t).unwrap()).approx_eq(&ComplexMatrix::identity(3), 1e-10));
    }

    #[test]
    fn partial_trace_preserves_trace(v in state(8), keep in 0usize..3) {
        let s = StateVector::with_dims(v, &[2, 2, 2]).unwrap();
        let rho = s.density_matrix();
        let reduced = rho.partial_trace(&[2, 2, 2], keep).unwrap();
        prop_assert!((reduced.trace().re - 1.0).abs() < 1e-12);
        prop_assert!(reduced.entries().is_hermitian(1e-12));
        prop_assert!(reduced.min_eigenvalue().unwrap() > -1e-12);
    }

    #[test]
    fn partial_trace_of_mixture(v in state(4), w in state(4), p in 0.0..1.0f64) {
        let a = StateVector::with_dims(v, &[2, 2]).unwrap().density_matrix();
        let b = StateVector::with_dims(w, &[2, 2]).unwrap().density_matrix();
        let mix = DensityMatrix::new(&a.entries().scale_real(p) + &b.entries().scale_real(1.0 - p)).unwrap();
        let r = mix.partial_trace(&[2, 2], 1).unwrap();
        let ra = a.partial_trace(&[2, 2], 1).unwrap();
        let rb = b.partial_trace(&[2, 2], 1).unwrap();
        let lin = &ra.entries().scale_real(p) + &rb.entries().scale_real(1.0 - p);
        prop_assert!(r.entries().approx_eq(&lin, 1e-12));
    }

    #[test]
    fn kron_is_associative(a in matrix(2), b in matrix(2), d in matrix(2)) {
        let left = a.kron(&b).kron(&d);
        let right = a.kron(&b.kron(&d));
        prop_assert!(left.approx_eq(&right, 1e-14));
        prop_assert!(kron_all(&[a, b, d]).approx_eq(&left, 1e-14));
    }

    #[test]
    fn span_projector_is_orthogonal_projector(vs in prop::collection::vec(state(5), 1..4)) {
        let s = Subspace::span(5, &vs).unwrap();
        let p = s.projector();
        prop_assert!(p.matmul(&p).approx_eq(&p, 1e-10));
        prop_assert!(p.is_hermitian(1e-10));
        prop_assert!((p.trace().re - s.rank() as f64).abs() < 1e-10);
        for v in &vs {
            prop_assert!(s.contains(v, 1e-8));
        }
    }

    #[test]
    fn symmetrized_drive_commutes_with_swap(g in hermitian(2)) {
        let sym = symmetrize_drive(&g, 2).unwrap();
        prop_assert!(sym.matrix().commutator(&swap_operator(2)).max_abs() < 1e-14);
    }

    #[test]
    fn symmetric_generator_preserves_triplet_space(g in hermitian(2), t in 0.0..3.0f64, v in state(4)) {
        let sym = symmetrize_drive(&g, 2).unwrap();
        let space = TwoParticleSpace::qubits().symmetric_subspace();
        let psi = space.project(&v);
        prop_assume!(psi.iter().map(|x| x.norm_sqr()).sum::<f64>() > 1e-3);
        let out = mat_exp(&sym, t).unwrap().apply(&psi);
        prop_assert!(space.contains(&out, 1e-10));
    }

    #[test]
    fn phase_convention_is_idempotent(v in state(6)) {
        let s = StateVector::new(v, product_labels(&[6])).unwrap();
        let again = StateVector::new(s.amplitudes().to_vec(), product_labels(&[6])).unwrap();
        prop_assert!(s.distance(&again) < 1e-14);
        let lead = s.amplitudes().iter().find(|a| a.norm() > 1e-12).unwrap();
        prop_assert!(lead.im == 0.0 && lead.re > 0.0);
    }

    #[test]
    fn variational_runs_are_deterministic(theta in 0.05..1.2f64) {
        let cfg = EngineConfig { dt: 0.01, total_time: 0.3, engine: EngineKind::Variational, ..Default::default() };
        let sym = TwoParticleSpace::qubits().symmetric_subspace();
        let tgt = DiagonalTarget::on_subsystem(&[2, 2], 0, theta, 1.0).unwrap();
        let s0 = watchdog_core::statistics::triplet_closed_form(theta, 1.0, 0.0);
        let a = evolve_variational(&s0, &tgt, &sym, &cfg).unwrap();
        let b = evolve_variational(&s0, &tgt, &sym, &cfg).unwrap();
        prop_assert_eq!(a, b);
    }
}

/// Independent satisfiability count: every element checked directly on bits.
fn brute_force_count(n: usize, elements: &[(Vec<usize>, Vec<Vec<u8>>)]) -> usize {
    (0..1usize << n)
        .filter(|&x| {
            elements.iter().all(|(qs, rows)| {
                let local: Vec<u8> = qs.iter().map(|&q| ((x >> (n - 1 - q)) & 1) as u8).collect();
                rows.contains(&local)
            })
        })
        .count()
}

fn random_element(n: usize) -> impl Strategy<Value = (Vec<usize>, Vec<Vec<u8>>)> {
    (1usize..=3.min(n)).prop_flat_map(move |arity| {
        (
            prop::sample::subsequence((0..n).collect::<Vec<_>>(), arity),
            prop::collection::vec(prop::collection::vec(0u8..2, arity), 1..=4),
        )
    })
}

fn random_network() -> impl Strategy<Value = (usize, Vec<(Vec<usize>, Vec<Vec<u8>>)>)> {
    (2usize..=7).prop_flat_map(|n| (Just(n), prop::collection::vec(random_element(n), 0..6)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn constrained_rank_matches_brute_force((n, raw) in random_network()) {
        let elements = raw
            .iter()
            .map(|(qs, rows)| ConstraintElement::custom(qs.clone(), rows.clone()).unwrap())
            .collect();
        let net = ConstraintNetwork::new(n, elements, 1.0).unwrap();
        let cs = constrained_subspace(&net).unwrap();
        prop_assert_eq!(cs.rank(), brute_force_count(n, &raw));
        prop_assert_eq!(cs.subspace.rank(), cs.rank());

        // Ground space of the penalty = constrained subspace when satisfiable.
        let h = network_penalty_hamiltonian(&net).unwrap();
        if cs.is_satisfiable() {
            prop_assert_eq!(h.ground_indices(), cs.assignments.clone());
        } else {
            prop_assert!(h.ground_energy() >= 1.0);
        }
    }

    #[test]
    fn bijective_embeddings_commute_with_penalty((n, raw) in random_network(), driven in 0usize..7) {
        prop_assume!(driven < n);
        let elements = raw
            .iter()
            .map(|(qs, rows)| ConstraintElement::custom(qs.clone(), rows.clone()).unwrap())
            .collect();
        let net = ConstraintNetwork::new(n, elements, 1.0).unwrap();
        if let Ok(ed) = embed_drive(&net, driven, 0.9) {
            let h = network_penalty_hamiltonian(&net).unwrap();
            prop_assert!(ed.commutator_norm(&h) < 1e-12);
            let g = ed.full_generator().unwrap();
            prop_assert!(g.is_hermitian(0.0));
            prop_assert!(g.commutator(h.to_dense().matrix()).frobenius_norm() < 1e-12);
        }
    }
}
