//! Evolution engines.
//!
//! * `Zeno` (A): unitary step, projection, renormalization — the
//!   conventional reading of continuous projection.
//! * `Generator` (B): exact propagation under an embedded generator.
//! * `Variational` (C): per-step maximization of |⟨new|old⟩| under subspace
//!   membership and a scheduled diagonal of one subsystem.

mod engines;
mod observables;
mod scenarios;
mod variational;

pub use engines::{evolve_generator, evolve_zeno};
pub use observables::{export_rows, observables, ExportRow, ObservableRecord};
pub use scenarios::{
    divergence_report, not_gate_closed_form, polarizer_drag, DivergenceReport, DivergenceScenario,
    EngineSummary, PolarizerOutcome,
};
pub use variational::{evolve_variational, solver_path, SolverPath};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::matrix::C64;
use crate::linalg::state::unravel;
use crate::linalg::StateVector;

/// Probabilities below this are treated as exactly zero targets.
pub const NEGLIGIBLE_PROBABILITY: f64 = 1e-24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EngineKind {
    Zeno,
    Generator,
    Variational,
}

impl EngineKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EngineKind::Zeno => "zeno",
            EngineKind::Generator => "generator",
            EngineKind::Variational => "variational",
        }
    }
}

impl fmt::Display for EngineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EngineKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "zeno" | "a" => Ok(EngineKind::Zeno),
            "generator" | "b" => Ok(EngineKind::Generator),
            "variational" | "c" => Ok(EngineKind::Variational),
            other => Err(Error::InvalidArgument(format!("unknown engine `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EngineConfig {
    pub dt: f64,
    pub total_time: f64,
    pub engine: EngineKind,
    pub omega: f64,
    /// Condition (i): stay inside the constraint subspace.
    pub enforce_subspace: bool,
    /// Subsystem whose diagonal follows the schedule (0-based).
    pub drive_target: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            dt: 1e-3,
            total_time: std::f64::consts::FRAC_PI_2,
            engine: EngineKind::Generator,
            omega: 1.0,
            enforce_subspace: true,
            drive_target: 0,
        }
    }
}

impl EngineConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0) || !self.dt.is_finite() || !self.total_time.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "dt = {} must be positive and finite",
                self.dt
            )));
        }
        if self.dt > self.total_time {
            return Err(Error::InvalidArgument(format!(
                "dt = {} exceeds total time {}",
                self.dt, self.total_time
            )));
        }
        if !self.omega.is_finite() {
            return Err(Error::InvalidArgument("omega must be finite".into()));
        }
        Ok(())
    }

    pub fn steps(&self) -> usize {
        (self.total_time / self.dt).round() as usize
    }

    /// t_k = k·dt for k = 0..=steps.
    pub fn times(&self) -> Vec<f64> {
        (0..=self.steps()).map(|k| k as f64 * self.dt).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<StateVector>,
    /// Cumulative retained probability; identically 1 for norm-preserving engines.
    pub survival: Vec<f64>,
    pub observables: Vec<ObservableRecord>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn final_state(&self) -> &StateVector {
        self.states.last().expect("trajectory has at least the initial state")
    }

    pub fn final_survival(&self) -> f64 {
        *self.survival.last().unwrap_or(&1.0)
    }

    /// Largest distance to a reference trajectory.
    pub fn max_distance(&self, reference: impl Fn(f64) -> StateVector) -> f64 {
        self.times
            .iter()
            .zip(&self.states)
            .map(|(&t, s)| s.distance(&reference(t)))
            .fold(0.0, f64::max)
    }
}

/// Scheduled populations for one two-level subsystem.
///
/// Every basis index carries a class: 0 and 1 are the subsystem values,
/// classes ≥ 2 (if any) are held at probability 0.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalTarget {
    pub subsystem: String,
    classes: Vec<usize>,
    n_classes: usize,
    pub theta0: f64,
    pub omega: f64,
}

impl DiagonalTarget {
    pub fn new(subsystem: impl Into<String>, classes: Vec<usize>, theta0: f64, omega: f64) -> Result<Self> {
        if classes.is_empty() {
            return Err(Error::InvalidArgument("empty class map".into()));
        }
        if !theta0.is_finite() || !omega.is_finite() {
            return Err(Error::InvalidArgument("schedule parameters must be finite".into()));
        }
        let n_classes = classes.iter().copied().max().unwrap_or(0).max(1) + 1;
        Ok(Self {
            subsystem: subsystem.into(),
            classes,
            n_classes,
            theta0,
            omega,
        })
    }

    /// Class = value of subsystem `index` in a product space.
    pub fn on_subsystem(dims: &[usize], index: usize, theta0: f64, omega: f64) -> Result<Self> {
        match dims.get(index) {
            Some(2) => {}
            Some(&d) => {
                return Err(Error::InvalidArgument(format!(
                    "scheduled subsystem {index} has dim {d}, expected 2"
                )))
            }
            None => {
                return Err(Error::InvalidArgument(format!(
                    "subsystem {index} outside {} factors",
                    dims.len()
                )))
            }
        }
        let n: usize = dims.iter().product();
        let classes = (0..n).map(|i| unravel(i, dims)[index]).collect();
        Self::new(format!("{index}"), classes, theta0, omega)
    }

    pub fn dim(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[usize] {
        &self.classes
    }

    pub fn n_classes(&self) -> usize {
        self.n_classes
    }

    /// (cos²(ϑ + ωt), sin²(ϑ + ωt))
    pub fn schedule(&self, t: f64) -> (f64, f64) {
        let (s, c) = (self.theta0 + self.omega * t).sin_cos();
        (c * c, s * s)
    }

    pub fn class_targets(&self, t: f64) -> Vec<f64> {
        let (p0, p1) = self.schedule(t);
        let mut out = vec![0.0; self.n_classes];
        out[0] = p0;
        out[1] = p1;
        out
    }

    pub fn populations(&self, amplitudes: &[C64]) -> Vec<f64> {
        let mut out = vec![0.0; self.n_classes];
        for (&c, a) in self.classes.iter().zip(amplitudes) {
            out[c] += a.norm_sqr();
        }
        out
    }
}
