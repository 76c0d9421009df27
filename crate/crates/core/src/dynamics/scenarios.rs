use crate::error::{Error, Result};
use crate::fermion::not_gate_generator;
use crate::linalg::matrix::r;
use crate::linalg::{Hamiltonian, StateVector, Subspace};
use crate::statistics::{single_drive, triplet_closed_form, triplet_generator, DriveSpec, TwoParticleSpace};

use super::{evolve_generator, evolve_variational, evolve_zeno, DiagonalTarget, EngineConfig, EngineKind, Trajectory};

/// cos φ|01⟩ + sin φ|10⟩ with φ = ϑ + ωt, on (r, s).
pub fn not_gate_closed_form(theta0: f64, omega: f64, t: f64) -> StateVector {
    let (s, c) = (theta0 + omega * t).sin_cos();
    StateVector::with_dims(vec![r(0.0), r(c), r(s), r(0.0)], &[2, 2]).expect("unit vector")
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolarizerOutcome {
    pub final_state: StateVector,
    pub survival: f64,
    /// Filter angles k·θ/N, k = 1..=N.
    pub angles: Vec<f64>,
    /// Cumulative survival after each filter.
    pub survivals: Vec<f64>,
}

/// |0⟩ sent through N linear filters, the k-th at angle kθ/N.
pub fn polarizer_drag(n: usize, total_angle: f64) -> Result<PolarizerOutcome> {
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one filter".into()));
    }
    if !total_angle.is_finite() {
        return Err(Error::InvalidArgument("angle must be finite".into()));
    }
    let step = total_angle / n as f64;
    let mut axis = (1.0, 0.0);
    let mut survival = 1.0;
    let mut angles = Vec::with_capacity(n);
    let mut survivals = Vec::with_capacity(n);
    for k in 1..=n {
        let angle = k as f64 * step;
        let (s, c) = angle.sin_cos();
        let overlap: f64 = axis.0 * c + axis.1 * s;
        survival *= overlap * overlap;
        // What leaves a filter is polarized along it, whatever came in.
        axis = (c, s);
        angles.push(angle);
        survivals.push(survival);
    }
    Ok(PolarizerOutcome {
        final_state: StateVector::with_dims(vec![r(axis.0), r(axis.1)], &[2])?,
        survival,
        angles,
        survivals,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DivergenceScenario {
    /// Drive on r only, fixed projector onto span{|01⟩, |10⟩}.
    NotGate { theta0: f64, omega: f64, total_time: f64, dt: f64 },
    /// Two-particle drive G_1 + G_2, projector onto the symmetric subspace.
    Triplet { theta0: f64, omega: f64, total_time: f64, dt: f64 },
}

impl DivergenceScenario {
    pub fn name(&self) -> &'static str {
        match self {
            DivergenceScenario::NotGate { .. } => "not-gate",
            DivergenceScenario::Triplet { .. } => "triplet",
        }
    }

    fn params(&self) -> (f64, f64, f64, f64) {
        match *self {
            DivergenceScenario::NotGate { theta0, omega, total_time, dt }
            | DivergenceScenario::Triplet { theta0, omega, total_time, dt } => (theta0, omega, total_time, dt),
        }
    }

    pub fn reference(&self, t: f64) -> StateVector {
        let (theta0, omega, _, _) = self.params();
        match self {
            DivergenceScenario::NotGate { .. } => not_gate_closed_form(theta0, omega, t),
            DivergenceScenario::Triplet { .. } => triplet_closed_form(theta0, omega, t),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EngineSummary {
    pub engine: EngineKind,
    pub fidelity_to_reference: f64,
    pub fidelity_to_initial: f64,
    pub final_survival: f64,
    pub final_state: StateVector,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DivergenceReport {
    pub scenario: &'static str,
    pub dt: f64,
    pub terminal_time: f64,
    pub zeno: EngineSummary,
    pub generator: EngineSummary,
    pub variational: EngineSummary,
}

impl DivergenceReport {
    pub fn zeno_freezes(&self) -> bool {
        (self.zeno.fidelity_to_initial - 1.0).abs() <= 1e-12
    }

    pub fn generator_rotates(&self) -> bool {
        self.generator.fidelity_to_reference >= 1.0 - 1e-9
    }

    pub fn variational_rotates(&self) -> bool {
        self.variational.fidelity_to_reference >= 1.0 - 10.0 * self.dt
    }

    /// ‖ψ_A − ψ_B‖ at the terminal time.
    pub fn zeno_generator_distance(&self) -> f64 {
        self.zeno.final_state.distance(&self.generator.final_state)
    }

    /// A stays put while B and C rotate.
    pub fn split_reproduced(&self) -> bool {
        self.zeno_freezes() && self.generator_rotates() && self.variational_rotates()
    }
}

fn summarize(engine: EngineKind, traj: &Trajectory, reference: &StateVector) -> EngineSummary {
    let last = traj.final_state();
    EngineSummary {
        engine,
        fidelity_to_reference: last.fidelity(reference),
        fidelity_to_initial: last.fidelity(&traj.states[0]),
        final_survival: traj.final_survival(),
        final_state: last.clone(),
    }
}

/// Runs engines A, B and C on the same initial state, drive and projector.
pub fn divergence_report(scenario: &DivergenceScenario) -> Result<DivergenceReport> {
    let (theta0, omega, total_time, dt) = scenario.params();
    let cfg = |engine| EngineConfig {
        dt,
        total_time,
        engine,
        omega,
        enforce_subspace: true,
        drive_target: 0,
    };
    let state0 = scenario.reference(0.0);
    let (local, generator, proj): (Hamiltonian, Hamiltonian, Subspace) = match scenario {
        DivergenceScenario::NotGate { .. } => (
            single_drive(&DriveSpec { omega, theta0, target: 1 }, 2, 2)?,
            Hamiltonian::new(not_gate_generator(omega)?)?,
            Subspace::computational(4, &[1, 2]),
        ),
        DivergenceScenario::Triplet { .. } => {
            let g = triplet_generator(omega)?;
            (g.clone(), g, TwoParticleSpace::qubits().symmetric_subspace())
        }
    };
    let target = DiagonalTarget::on_subsystem(&[2, 2], 0, theta0, omega)?;

    let a = evolve_zeno(&state0, &local, &proj, &cfg(EngineKind::Zeno))?;
    let b = evolve_generator(&state0, &generator, &cfg(EngineKind::Generator))?;
    let c = evolve_variational(&state0, &target, &proj, &cfg(EngineKind::Variational))?;
    let terminal_time = *b.times.last().expect("non-empty grid");
    let reference = scenario.reference(terminal_time);
    Ok(DivergenceReport {
        scenario: scenario.name(),
        dt,
        terminal_time,
        zeno: summarize(EngineKind::Zeno, &a, &reference),
        generator: summarize(EngineKind::Generator, &b, &reference),
        variational: summarize(EngineKind::Variational, &c, &reference),
    })
}
