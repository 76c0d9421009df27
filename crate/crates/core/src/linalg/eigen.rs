//! Hermitian eigendecomposition by cyclic complex Jacobi rotations.
//!
//! Dense input is limited to [`JACOBI_MAX_DIM`]. Matrices that are already
//! diagonal in the given basis are read off directly at any size.

use crate::error::{Error, Result};
use crate::linalg::matrix::{ComplexMatrix, C64, ONE, ZERO};

pub const JACOBI_MAX_DIM: usize = 64;
const MAX_SWEEPS: usize = 100;

/// Ascending eigenvalues with eigenvectors stored as matrix columns.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl Eigen {
    pub fn vector(&self, k: usize) -> Vec<C64> {
        self.vectors.column(k)
    }

    /// Largest ‖Hv − λv‖ over all pairs.
    pub fn max_residual(&self, h: &ComplexMatrix) -> f64 {
        (0..self.values.len())
            .map(|k| {
                let v = self.vector(k);
                let hv = h.apply(&v);
                hv.iter()
                    .zip(&v)
                    .map(|(a, b)| (a - b * self.values[k]).norm_sqr())
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0, f64::max)
    }
}

fn hermitian_tolerance(h: &ComplexMatrix) -> f64 {
    1e-10 * h.max_abs().max(1.0)
}

pub fn eig_hermitian(h: &ComplexMatrix) -> Result<Eigen> {
    if !h.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "eigendecomposition of a {}x{} matrix",
            h.rows(),
            h.cols()
        )));
    }
    let dev = h.hermitian_deviation();
    if dev > hermitian_tolerance(h) {
        return Err(Error::NotHermitian { deviation: dev });
    }
    if h.is_diagonal(0.0) {
        let diag: Vec<f64> = h.diagonal().iter().map(|x| x.re).collect();
        return Ok(eig_diagonal(&diag));
    }
    if h.rows() > JACOBI_MAX_DIM {
        return Err(Error::InvalidArgument(format!(
            "dense eigensolver limited to dim {JACOBI_MAX_DIM}, got {}",
            h.rows()
        )));
    }
    Ok(jacobi(h))
}

/// Eigenpairs of a real diagonal operator, sorted ascending (stable on ties).
pub fn eig_diagonal(diag: &[f64]) -> Eigen {
    let n = diag.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| diag[a].total_cmp(&diag[b]));
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (col, &i) in order.iter().enumerate() {
        vectors[(i, col)] = ONE;
    }
    Eigen {
        values: order.iter().map(|&i| diag[i]).collect(),
        vectors,
    }
}

fn off_diagonal_sqr(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for p in 0..n {
        for q in (p + 1)..n {
            s += a[(p, q)].norm_sqr();
        }
    }
    s
}

fn jacobi(h: &ComplexMatrix) -> Eigen {
    let n = h.rows();
    // Symmetrize away the sub-tolerance anti-Hermitian part first.
    let mut a = (h + &h.dagger()).scale_real(0.5);
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm().max(f64::MIN_POSITIVE);

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_sqr(&a).sqrt() <= 1e-16 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let b = a[(p, q)];
                let bn = b.norm();
                if bn <= 1e-300 {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let tau = (aqq - app) / (2.0 * bn);
                let t = if tau == 0.0 {
                    1.0
                } else {
                    tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
                };
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = t * cs;
                // W = diag(1, e^{-iφ}) · [[c, s], [-s, c]] with b = |b| e^{iφ}
                let e = (b / bn).conj();
                let w_pp = C64::new(cs, 0.0);
                let w_pq = C64::new(sn, 0.0);
                let w_qp = e * (-sn);
                let w_qq = e * cs;

                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * w_pp + akq * w_qp;
                    a[(k, q)] = akp * w_pq + akq * w_qq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = w_pp.conj() * apk + w_qp.conj() * aqk;
                    a[(q, k)] = w_pq.conj() * apk + w_qq.conj() * aqk;
                }
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = C64::new(a[(q, q)].re, 0.0);

                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * w_pp + vkq * w_qp;
                    v[(k, q)] = vkp * w_pq + vkq * w_qq;
                }
            }
        }
    }

    let raw: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| raw[x].total_cmp(&raw[y]));
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (col, &src) in order.iter().enumerate() {
        let mut column = v.column(src);
        crate::linalg::state::fix_phase(&mut column);
        for (row, x) in column.into_iter().enumerate() {
            vectors[(row, col)] = x;
        }
    }
    Eigen {
        values: order.iter().map(|&i| raw[i]).collect(),
        vectors,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::{c, r, I};

    fn sigma_y() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[vec![ZERO, -I], vec![I, ZERO]])
    }

    #[test]
    fn pauli_y_spectrum() {
        let e = eig_hermitian(&sigma_y()).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-14);
        assert!((e.values[1] - 1.0).abs() < 1e-14);
        assert!(e.max_residual(&sigma_y()) < 1e-12);
    }

    #[test]
    fn diagonal_input_is_read_off() {
        let h = ComplexMatrix::from_real_diagonal(&[1.0, 2.0, 3.0, 4.0, 0.0, 0.0]);
        let e = eig_hermitian(&h).unwrap();
        assert_eq!(e.values, vec![0.0, 0.0, 1.0, 2.0, 3.0, 4.0]);
        assert_eq!(e.max_residual(&h), 0.0);
    }

    #[test]
    fn large_diagonal_bypasses_size_limit() {
        let diag: Vec<f64> = (0..200).map(|i| (i % 7) as f64).collect();
        let e = eig_hermitian(&ComplexMatrix::from_real_diagonal(&diag)).unwrap();
        assert_eq!(e.values.len(), 200);
        assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_rows(&[vec![r(0.0), r(1.0)], vec![r(0.0), r(0.0)]]);
        assert!(matches!(eig_hermitian(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn dense_complex_hermitian() {
        let h = ComplexMatrix::from_rows(&[
            vec![r(2.0), c(1.0, -1.0), c(0.0, 0.5)],
            vec![c(1.0, 1.0), r(-1.0), c(0.3, 0.2)],
            vec![c(0.0, -0.5), c(0.3, -0.2), r(0.5)],
        ]);
        let e = eig_hermitian(&h).unwrap();
        assert!(e.max_residual(&h) < 1e-10);
        assert!(e.vectors.is_unitary(1e-12));
        let tr: f64 = e.values.iter().sum();
        assert!((tr - 1.5).abs() < 1e-12);
    }
}
