use crate::error::{Error, Result};
use crate::linalg::matrix::{inner, norm, ComplexMatrix, C64, ZERO};

/// Amplitudes smaller than this are treated as absent when fixing the phase.
pub const PHASE_THRESHOLD: f64 = 1e-12;
pub const NORM_TOL: f64 = 1e-12;

/// Normalized pure state over a labeled basis.
///
/// Construction normalizes and fixes the global phase so that the first
/// amplitude with magnitude above [`PHASE_THRESHOLD`] is real and
/// non-negative. Two states describing the same ray therefore compare equal
/// as plain vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<C64>,
    labels: Vec<String>,
}

impl StateVector {
    pub fn new(amplitudes: Vec<C64>, labels: Vec<String>) -> Result<Self> {
        if amplitudes.len() != labels.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} amplitudes with {} labels",
                amplitudes.len(),
                labels.len()
            )));
        }
        let n = norm(&amplitudes);
        if n <= f64::MIN_POSITIVE || !n.is_finite() {
            return Err(Error::ZeroNorm);
        }
        let mut amplitudes: Vec<C64> = amplitudes.into_iter().map(|a| a / n).collect();
        fix_phase(&mut amplitudes);
        Ok(Self { amplitudes, labels })
    }

    /// State with default binary labels `|b_0 b_1 ...⟩` for the given subsystem dims.
    pub fn with_dims(amplitudes: Vec<C64>, dims: &[usize]) -> Result<Self> {
        let labels = product_labels(dims);
        Self::new(amplitudes, labels)
    }

    pub fn basis(index: usize, labels: Vec<String>) -> Result<Self> {
        if index >= labels.len() {
            return Err(Error::InvalidArgument(format!(
                "basis index {index} out of range {}",
                labels.len()
            )));
        }
        let mut amps = vec![ZERO; labels.len()];
        amps[index] = C64::new(1.0, 0.0);
        Self::new(amps, labels)
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amplitudes
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn inner(&self, other: &Self) -> C64 {
        inner(&self.amplitudes, &other.amplitudes)
    }

    /// |⟨self|other⟩|²
    pub fn fidelity(&self, other: &Self) -> f64 {
        self.inner(other).norm_sqr()
    }

    /// Euclidean distance between the phase-fixed amplitude vectors.
    pub fn distance(&self, other: &Self) -> f64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn expectation(&self, op: &ComplexMatrix) -> C64 {
        inner(&self.amplitudes, &op.apply(&self.amplitudes))
    }

    /// Applies `op` and renormalizes, keeping the labels.
    pub fn evolve(&self, op: &ComplexMatrix) -> Result<Self> {
        if op.cols() != self.dim() || op.rows() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} operator on dim {}",
                op.rows(),
                op.cols(),
                self.dim()
            )));
        }
        Self::new(op.apply(&self.amplitudes), self.labels.clone())
    }

    pub fn density_matrix(&self) -> DensityMatrix {
        DensityMatrix {
            entries: ComplexMatrix::outer(&self.amplitudes, &self.amplitudes),
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }
}

/// Rotates `v` so its first significant amplitude is real and non-negative.
pub fn fix_phase(v: &mut [C64]) {
    if let Some(k) = v.iter().position(|a| a.norm() > PHASE_THRESHOLD) {
        let magnitude = v[k].norm();
        let phase = v[k].conj() / magnitude;
        for a in v.iter_mut() {
            *a *= phase;
        }
        // exactly real, not merely up to rounding
        v[k] = C64::new(magnitude, 0.0);
    }
}

/// Labels like `|01⟩` for a tensor product of subsystems of the given dims.
pub fn product_labels(dims: &[usize]) -> Vec<String> {
    let total: usize = dims.iter().product();
    (0..total)
        .map(|idx| {
            let digits: String = unravel(idx, dims)
                .iter()
                .map(|d| char::from_digit(*d as u32, 36).unwrap_or('?'))
                .collect();
            format!("|{digits}⟩")
        })
        .collect()
}

/// Mixed-radix digits of `index`, first subsystem most significant.
pub fn unravel(mut index: usize, dims: &[usize]) -> Vec<usize> {
    let mut digits = vec![0; dims.len()];
    for (slot, &d) in digits.iter_mut().zip(dims).rev() {
        *slot = index % d;
        index /= d;
    }
    digits
}

pub fn ravel(digits: &[usize], dims: &[usize]) -> usize {
    digits.iter().zip(dims).fold(0, |acc, (&x, &d)| acc * d + x)
}

/// Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity (1e-12) and unit trace (1e-12). Positivity is not
    /// checked here; see [`DensityMatrix::min_eigenvalue`].
    pub fn new(entries: ComplexMatrix) -> Result<Self> {
        let dev = entries.hermitian_deviation();
        if dev > 1e-12 {
            return Err(Error::NotHermitian { deviation: dev });
        }
        let tr = entries.trace();
        if (tr.re - 1.0).abs() > 1e-12 || tr.im.abs() > 1e-12 {
            return Err(Error::InvalidArgument(format!(
                "density matrix trace {tr} is not 1"
            )));
        }
        Ok(Self { entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.rows()
    }

    pub fn entries(&self) -> &ComplexMatrix {
        &self.entries
    }

    pub fn trace(&self) -> C64 {
        self.entries.trace()
    }

    /// Real diagonal (populations).
    pub fn diag(&self) -> Vec<f64> {
        self.entries.diagonal().iter().map(|x| x.re).collect()
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        let eig = crate::linalg::eigen::eig_hermitian(&self.entries)?;
        Ok(eig.values.first().copied().unwrap_or(0.0))
    }

    /// Reduced density matrix of subsystem `keep`, tracing out all others.
    pub fn partial_trace(&self, dims: &[usize], keep: usize) -> Result<DensityMatrix> {
        let total: usize = dims.iter().product();
        if total != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "subsystem dims {dims:?} (product {total}) vs density matrix dim {}",
                self.dim()
            )));
        }
        if keep >= dims.len() {
            return Err(Error::DimensionMismatch(format!(
                "subsystem {keep} out of range for {} subsystems",
                dims.len()
            )));
        }
        let dk = dims[keep];
        let mut out = ComplexMatrix::zeros(dk, dk);
        for i in 0..total {
            let di = unravel(i, dims);
            for j in 0..total {
                let dj = unravel(j, dims);
                let same_env = di
                    .iter()
                    .zip(&dj)
                    .enumerate()
                    .all(|(s, (a, b))| s == keep || a == b);
                if same_env {
                    out[(di[keep], dj[keep])] += self.entries[(i, j)];
                }
            }
        }
        Ok(DensityMatrix { entries: out })
    }
}

/// Populations of subsystem `keep` for a pure state, without forming the full
/// density matrix.
pub fn reduced_diagonal(amplitudes: &[C64], dims: &[usize], keep: usize) -> Result<Vec<f64>> {
    let total: usize = dims.iter().product();
    if total != amplitudes.len() || keep >= dims.len() {
        return Err(Error::DimensionMismatch(format!(
            "dims {dims:?} / keep {keep} vs state dim {}",
            amplitudes.len()
        )));
    }
    let mut out = vec![0.0; dims[keep]];
    for (i, a) in amplitudes.iter().enumerate() {
        out[unravel(i, dims)[keep]] += a.norm_sqr();
    }
    Ok(out)
}
