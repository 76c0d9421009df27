use rayon::prelude::*;

use crate::dynamics::{evolve_generator, evolve_variational, DiagonalTarget, EngineConfig, Trajectory};
use crate::error::{Error, Result};
use crate::linalg::matrix::{C64, ZERO};
use crate::linalg::StateVector;

use super::{bit, constrained_subspace, embed_drive, network_penalty_hamiltonian, ConstraintNetwork};

/// Success means P(driven qubit = target bit) at or above this.
pub const SUCCESS_THRESHOLD: f64 = 1.0 - 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentEngine {
    Generator,
    Variational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentStatus {
    Completed,
    /// No satisfying assignment has the driven qubit at the target value.
    UnsatisfiableWithPin,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRecord {
    pub status: ExperimentStatus,
    pub engine: ExperimentEngine,
    pub driven_qubit: usize,
    pub target_bit: u8,
    pub times: Vec<f64>,
    /// P(driven qubit = target bit) per grid time.
    pub success: Vec<f64>,
    pub t_star: Option<f64>,
    pub terminal_success: f64,
    /// max_t (1 − ‖P_constraint ψ(t)‖²)
    pub max_violation: f64,
    /// max_t |⟨H_net⟩|
    pub max_energy: f64,
    /// Full-space trajectory (absent when nothing ran).
    pub trajectory: Option<Trajectory>,
}

/// Drives `driven` from a cos ϑ / sin ϑ superposition of its two values
/// toward `target_bit`, inside the satisfying set of `net`.
///
/// The initial amplitude cos ϑ (sin ϑ) is spread uniformly over satisfying
/// assignments with the driven bit at 0 (1). For target 1 the mixing angle
/// grows as ϑ + ωt; for target 0 it shrinks as ϑ − ωt.
pub fn drive_output_experiment(
    net: &ConstraintNetwork,
    driven: usize,
    target_bit: u8,
    engine: ExperimentEngine,
    cfg: &EngineConfig,
    theta0: f64,
) -> Result<ExperimentRecord> {
    cfg.validate()?;
    let n = net.n_qubits();
    if driven >= n {
        return Err(Error::InvalidArgument(format!(
            "driven qubit {driven} outside a {n}-qubit network"
        )));
    }
    if target_bit > 1 {
        return Err(Error::InvalidArgument(format!("target bit {target_bit}")));
    }
    let cs = constrained_subspace(net)?;
    if !cs.is_satisfiable() {
        return Err(Error::Unsatisfiable);
    }
    let h = network_penalty_hamiltonian(net)?;

    let group = |v: u8| -> Vec<usize> {
        cs.assignments
            .iter()
            .copied()
            .filter(|&x| bit(x, driven, n) == v)
            .collect()
    };
    let (zeros, ones) = (group(0), group(1));
    let record = |status, times, success: Vec<f64>, trajectory| {
        let t_star = success
            .iter()
            .zip(&times)
            .find(|(&p, _)| p >= SUCCESS_THRESHOLD)
            .map(|(_, &t): (&f64, &f64)| t);
        ExperimentRecord {
            status,
            engine,
            driven_qubit: driven,
            target_bit,
            terminal_success: success.last().copied().unwrap_or(0.0),
            times,
            success,
            t_star,
            max_violation: 0.0,
            max_energy: 0.0,
            trajectory,
        }
    };
    let wanted = if target_bit == 1 { &ones } else { &zeros };
    if wanted.is_empty() {
        return Ok(record(ExperimentStatus::UnsatisfiableWithPin, Vec::new(), Vec::new(), None));
    }

    // Without an opposite group there is nothing to rotate; start on target.
    let (c0, c1) = if zeros.is_empty() || ones.is_empty() {
        if target_bit == 1 { (0.0, 1.0) } else { (1.0, 0.0) }
    } else {
        let (s, c) = theta0.sin_cos();
        (c, s)
    };
    let mut amps = vec![ZERO; net.dim()];
    for &x in &zeros {
        amps[x] = C64::new(c0 / (zeros.len() as f64).sqrt(), 0.0);
    }
    for &x in &ones {
        amps[x] = C64::new(c1 / (ones.len() as f64).sqrt(), 0.0);
    }
    let labels = net.labels();
    let state0 = StateVector::new(amps, labels.clone())?;
    let omega = if target_bit == 1 { cfg.omega } else { -cfg.omega };
    let theta = c1.atan2(c0);

    let traj = match engine {
        ExperimentEngine::Generator => {
            let ed = embed_drive(net, driven, omega)?;
            let coords = ed.subspace.coordinates(state0.amplitudes());
            let sub_labels: Vec<String> = ed.assignments.iter().map(|&x| labels[x].clone()).collect();
            let sub0 = StateVector::new(coords, sub_labels)?;
            let sub = evolve_generator(&sub0, &ed.generator, cfg)?;
            let states = sub
                .states
                .iter()
                .map(|s| StateVector::new(ed.subspace.embed(s.amplitudes()), labels.clone()))
                .collect::<Result<Vec<_>>>()?;
            Trajectory { states, ..sub }
        }
        ExperimentEngine::Variational => {
            let classes = (0..net.dim()).map(|x| bit(x, driven, n) as usize).collect();
            let target = DiagonalTarget::new(format!("q{driven}"), classes, theta, omega)?;
            match evolve_variational(&state0, &target, &cs.subspace, cfg) {
                Err(Error::Infeasible { .. }) => {
                    return Ok(record(ExperimentStatus::UnsatisfiableWithPin, Vec::new(), Vec::new(), None))
                }
                other => other?,
            }
        }
    };

    let success: Vec<f64> = traj
        .states
        .iter()
        .map(|s| {
            s.amplitudes()
                .iter()
                .enumerate()
                .filter(|&(x, _)| bit(x, driven, n) == target_bit)
                .map(|(_, a)| a.norm_sqr())
                .sum()
        })
        .collect();
    let max_violation = traj
        .states
        .iter()
        .map(|s| (1.0 - cs.subspace.weight(s.amplitudes())).max(0.0))
        .fold(0.0, f64::max);
    let max_energy = traj
        .states
        .iter()
        .map(|s| h.expectation(s.amplitudes()).abs())
        .fold(0.0, f64::max);
    let mut rec = record(ExperimentStatus::Completed, traj.times.clone(), success, None);
    rec.max_violation = max_violation;
    rec.max_energy = max_energy;
    rec.trajectory = Some(traj);
    Ok(rec)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingRow {
    pub k: usize,
    pub n_qubits: usize,
    pub t_star: Option<f64>,
    pub terminal_success: f64,
    pub max_violation: f64,
    pub max_energy: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingTable {
    pub dt: f64,
    pub rows: Vec<ScalingRow>,
}

impl ScalingTable {
    /// max t* − min t*, or None if some chain never reached the threshold.
    pub fn t_star_spread(&self) -> Option<f64> {
        let ts: Option<Vec<f64>> = self.rows.iter().map(|r| r.t_star).collect();
        let ts = ts?;
        let lo = ts.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = ts.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Some(hi - lo)
    }

    /// t* agrees across chain lengths to within one time step.
    pub fn size_independent(&self) -> bool {
        self.t_star_spread().is_some_and(|s| s < self.dt)
    }
}

/// Drives the output qubit q_k of NOT chains of length k to 1, one chain per
/// entry of `ks`, in parallel.
pub fn scaling_experiment(
    ks: &[usize],
    engine: ExperimentEngine,
    cfg: &EngineConfig,
    theta0: f64,
) -> Result<ScalingTable> {
    if ks.is_empty() {
        return Err(Error::InvalidArgument("no chain lengths given".into()));
    }
    let rows = ks
        .par_iter()
        .map(|&k| {
            let net = ConstraintNetwork::not_chain(k)?;
            let rec = drive_output_experiment(&net, k, 1, engine, cfg, theta0)?;
            Ok(ScalingRow {
                k,
                n_qubits: k + 1,
                t_star: rec.t_star,
                terminal_success: rec.terminal_success,
                max_violation: rec.max_violation,
                max_energy: rec.max_energy,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ScalingTable { dt: cfg.dt, rows })
}
