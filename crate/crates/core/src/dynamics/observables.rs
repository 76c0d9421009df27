use crate::error::{Error, Result};
use crate::linalg::matrix::C64;
use crate::linalg::{reduced_diagonal, Hamiltonian, StateVector};

use super::Trajectory;

#[derive(Debug, Clone, PartialEq)]
pub struct ObservableRecord {
    pub t: f64,
    /// diag ρ_j for every subsystem j.
    pub reduced_diag: Vec<Vec<f64>>,
    pub energy: f64,
    /// |⟨ref(t)|ψ(t)⟩|²
    pub fidelity: f64,
}

pub fn observables(
    traj: &Trajectory,
    dims: &[usize],
    h: &Hamiltonian,
    reference: impl Fn(f64) -> StateVector,
) -> Result<Vec<ObservableRecord>> {
    let n: usize = dims.iter().product();
    if h.dim() != n || traj.states.iter().any(|s| s.dim() != n) {
        return Err(Error::DimensionMismatch(format!(
            "dims {dims:?} (total {n}) against operator dim {}",
            h.dim()
        )));
    }
    let diagonal = h
        .matrix()
        .is_diagonal(0.0)
        .then(|| h.matrix().diagonal().iter().map(|x| x.re).collect::<Vec<f64>>());
    traj.times
        .iter()
        .zip(&traj.states)
        .map(|(&t, s)| {
            let amps = s.amplitudes();
            let reduced_diag = (0..dims.len())
                .map(|j| reduced_diagonal(amps, dims, j))
                .collect::<Result<Vec<_>>>()?;
            let energy = match &diagonal {
                Some(d) => d.iter().zip(amps).map(|(e, a)| e * a.norm_sqr()).sum(),
                None => s.expectation(h.matrix()).re,
            };
            let reference = reference(t);
            if reference.dim() != n {
                return Err(Error::DimensionMismatch(format!(
                    "reference state of dim {} at t = {t}",
                    reference.dim()
                )));
            }
            Ok(ObservableRecord {
                t,
                reduced_diag,
                energy,
                fidelity: s.fidelity(&reference),
            })
        })
        .collect()
}

/// One output row per grid time.
#[derive(Debug, Clone, PartialEq)]
pub struct ExportRow {
    pub t: f64,
    pub amplitudes: Vec<C64>,
    pub reduced_diag: Vec<Vec<f64>>,
    pub energy: f64,
    pub survival: f64,
    pub fidelity: f64,
}

pub fn export_rows(traj: &Trajectory) -> Result<Vec<ExportRow>> {
    if traj.observables.len() != traj.len() {
        return Err(Error::InvalidArgument(
            "trajectory has no observables attached".into(),
        ));
    }
    Ok(traj
        .states
        .iter()
        .zip(&traj.observables)
        .zip(&traj.survival)
        .map(|((s, o), &survival)| ExportRow {
            t: o.t,
            amplitudes: s.amplitudes().to_vec(),
            reduced_diag: o.reduced_diag.clone(),
            energy: o.energy,
            survival,
            fidelity: o.fidelity,
        })
        .collect())
}
