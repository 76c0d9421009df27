//! Cross-checks of the hand-written eigensolver and exponential against nalgebra.

use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use watchdog_core::linalg::matrix::c;
use watchdog_core::{eig_hermitian, mat_exp, ComplexMatrix, Hamiltonian};

fn to_na(m: &ComplexMatrix) -> DMatrix<Complex64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)])
}

fn from_na(m: &DMatrix<Complex64>) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(m.nrows(), m.ncols());
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            out[(i, j)] = m[(i, j)];
        }
    }
    out
}

fn hermitian(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-2.0..2.0f64, -2.0..2.0f64), n * n).prop_map(move |d| {
        let m = ComplexMatrix::new(n, n, d.into_iter().map(|(a, b)| c(a, b)).collect()).unwrap();
        (&m + &m.dagger()).scale_real(0.5)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn eigenvalues_match_nalgebra(h in (2usize..=8).prop_flat_map(hermitian)) {
        let ours = eig_hermitian(&h).unwrap();
        let mut theirs: Vec<f64> = to_na(&h).symmetric_eigen().eigenvalues.iter().copied().collect();
        theirs.sort_by(f64::total_cmp);
        for (a, b) in ours.values.iter().zip(&theirs) {
            prop_assert!((a - b).abs() < 1e-10, "{a} vs {b}");
        }
        prop_assert!(ours.max_residual(&h) < 1e-10);
    }

    #[test]
    fn exponential_matches_spectral_formula(h in (2usize..=6).prop_flat_map(hermitian), t in -4.0..4.0f64) {
        let eig = to_na(&h).symmetric_eigen();
        let phases = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| Complex64::new(0.0, -l * t).exp()));
        let oracle = &eig.eigenvectors * phases * eig.eigenvectors.adjoint();
        let ours = mat_exp(&Hamiltonian::new(h).unwrap(), t).unwrap();
        prop_assert!(ours.approx_eq(&from_na(&oracle), 1e-10));
    }
}

#[test]
fn large_norm_generator() {
    // ‖H t‖ ≈ 400 exercises many squarings.
    let mut m = ComplexMatrix::zeros(4, 4);
    for i in 0..4 {
        m[(i, i)] = c(i as f64 * 10.0, 0.0);
        if i + 1 < 4 {
            m[(i, i + 1)] = c(3.0, 1.0);
            m[(i + 1, i)] = c(3.0, -1.0);
        }
    }
    let t = 10.0;
    let eig = to_na(&m).symmetric_eigen();
    let phases = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| Complex64::new(0.0, -l * t).exp()));
    let oracle = from_na(&(&eig.eigenvectors * phases * eig.eigenvectors.adjoint()));
    let ours = mat_exp(&Hamiltonian::new(m).unwrap(), t).unwrap();
    assert!(ours.approx_eq(&oracle, 1e-9));
    assert!(ours.is_unitary(1e-12));
}
