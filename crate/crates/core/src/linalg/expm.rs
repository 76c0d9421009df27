//! Propagators exp(−iHt) by scaling and squaring around a truncated Taylor
//! series, followed by a Newton–Schulz polar correction when the result
//! drifts from unitarity.

use crate::error::{Error, Result};
use crate::linalg::hamiltonian::Hamiltonian;
use crate::linalg::matrix::{ComplexMatrix, C64};

const SCALED_NORM_TARGET: f64 = 0.5;
const MAX_TAYLOR_TERMS: usize = 40;
const DRIFT_TRIGGER: f64 = 1e-10;
const DRIFT_TARGET: f64 = 1e-14;

/// exp(−iHt).
pub fn mat_exp(h: &Hamiltonian, t: f64) -> Result<ComplexMatrix> {
    if !t.is_finite() {
        return Err(Error::InvalidArgument(format!("time {t} is not finite")));
    }
    let a = h.matrix().scale(C64::new(0.0, -t));
    let mut u = exp_general(&a);
    if u.unitarity_deviation() > DRIFT_TRIGGER {
        u = polar_correct(u);
    }
    Ok(u)
}

/// exp(A) for a general square matrix.
pub fn exp_general(a: &ComplexMatrix) -> ComplexMatrix {
    let n = a.rows();
    let norm = a.norm_one();
    let squarings = if norm > SCALED_NORM_TARGET {
        (norm / SCALED_NORM_TARGET).log2().ceil() as i32
    } else {
        0
    };
    let b = a.scale_real(0.5_f64.powi(squarings));

    let mut sum = ComplexMatrix::identity(n);
    let mut term = ComplexMatrix::identity(n);
    for k in 1..=MAX_TAYLOR_TERMS {
        term = term.matmul(&b).scale_real(1.0 / k as f64);
        sum = &sum + &term;
        if term.norm_one() <= 1e-20 * sum.norm_one() {
            break;
        }
    }
    for _ in 0..squarings {
        sum = sum.matmul(&sum);
    }
    sum
}

/// Nearest unitary via U ← U(3I − U†U)/2.
fn polar_correct(mut u: ComplexMatrix) -> ComplexMatrix {
    let n = u.rows();
    let three = ComplexMatrix::identity(n).scale_real(3.0);
    for _ in 0..30 {
        let g = u.dagger().matmul(&u);
        if g.max_abs_diff(&ComplexMatrix::identity(n)) <= DRIFT_TARGET {
            break;
        }
        u = u.matmul(&(&three - &g)).scale_real(0.5);
    }
    u
}
