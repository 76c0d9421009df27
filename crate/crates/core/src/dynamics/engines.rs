use crate::error::{Error, Result};
use crate::linalg::eigen::JACOBI_MAX_DIM;
use crate::linalg::matrix::{norm, C64};
use crate::linalg::{mat_exp, Hamiltonian, StateVector, Subspace};

use super::{EngineConfig, Trajectory};

/// Step norms below this abort a projective run.
pub const ANNIHILATION_TOL: f64 = 1e-12;

fn check_dim(state: &StateVector, dim: usize, what: &str) -> Result<()> {
    if state.dim() != dim {
        return Err(Error::DimensionMismatch(format!(
            "state of dim {} with {what} of dim {dim}",
            state.dim()
        )));
    }
    Ok(())
}

/// ψ(t_k) = exp(−i g t_k) ψ(0).
///
/// Small generators are exponentiated afresh at every grid time; larger
/// ones are stepped with a single U(dt).
pub fn evolve_generator(state0: &StateVector, g: &Hamiltonian, cfg: &EngineConfig) -> Result<Trajectory> {
    cfg.validate()?;
    check_dim(state0, g.dim(), "generator")?;
    let times = cfg.times();
    let labels = state0.labels().to_vec();
    let mut states = Vec::with_capacity(times.len());
    states.push(state0.clone());
    if g.dim() <= JACOBI_MAX_DIM {
        for &t in &times[1..] {
            let u = mat_exp(g, t)?;
            states.push(StateVector::new(u.apply(state0.amplitudes()), labels.clone())?);
        }
    } else {
        let u = mat_exp(g, cfg.dt)?;
        let mut psi = state0.amplitudes().to_vec();
        for _ in 1..times.len() {
            psi = u.apply(&psi);
            states.push(StateVector::new(psi.clone(), labels.clone())?);
        }
    }
    Ok(Trajectory {
        survival: vec![1.0; times.len()],
        times,
        states,
        observables: Vec::new(),
    })
}

/// Conventional continuous projection: ψ ← P U(dt) ψ, record ‖·‖², renormalize.
///
/// The recorded initial state is P ψ(0) renormalized, with survival ‖P ψ(0)‖².
pub fn evolve_zeno(
    state0: &StateVector,
    local_drive: &Hamiltonian,
    proj: &Subspace,
    cfg: &EngineConfig,
) -> Result<Trajectory> {
    cfg.validate()?;
    check_dim(state0, local_drive.dim(), "drive")?;
    check_dim(state0, proj.ambient_dim(), "projector")?;
    let labels = state0.labels().to_vec();
    let times = cfg.times();

    let start = proj.project(state0.amplitudes());
    let w0 = norm(&start);
    if w0 <= 1e-9 {
        return Err(Error::Annihilated { step: 0, norm: w0 });
    }
    let u = mat_exp(local_drive, cfg.dt)?;
    let mut survival = Vec::with_capacity(times.len());
    let mut states = Vec::with_capacity(times.len());
    let mut kept = w0 * w0;
    let mut psi: Vec<C64> = start.iter().map(|a| a / w0).collect();
    survival.push(kept);
    states.push(StateVector::new(psi.clone(), labels.clone())?);

    for step in 1..times.len() {
        let phi = proj.project(&u.apply(&psi));
        let n = norm(&phi);
        if n < ANNIHILATION_TOL {
            return Err(Error::Annihilated { step, norm: n });
        }
        kept *= n * n;
        survival.push(kept);
        let s = StateVector::new(phi, labels.clone())?;
        psi = s.amplitudes().to_vec();
        states.push(s);
    }
    Ok(Trajectory {
        times,
        states,
        survival,
        observables: Vec::new(),
    })
}
