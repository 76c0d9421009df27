//! Identity suite: algebraic identities and engine properties with residuals.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_6, PI};

use serde_json::{json, Value};
use watchdog_core::dynamics::{
    evolve_generator, evolve_variational, evolve_zeno, not_gate_closed_form, polarizer_drag, DiagonalTarget,
    EngineConfig, EngineKind,
};
use watchdog_core::fermion::{
    annihilation, commutator_check, creation, fermion_variational_run, penalty_hamiltonian, sector,
    PenaltyEnergies, QubitEmbedding, MODES,
};
use watchdog_core::linalg::matrix::{I, ZERO};
use watchdog_core::statistics::{sigma_y, single_drive, symmetrize_drive, triplet_closed_form, DriveSpec};
use watchdog_core::{eig_hermitian, ComplexMatrix, Error, Hamiltonian, Subspace};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub residual: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn pass(&self) -> bool {
        self.residual <= self.tolerance
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub energies: PenaltyEnergies,
    pub omega: f64,
    /// Negative control: build drives from −σ_y.
    pub sign_flip: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { energies: PenaltyEnergies::default(), omega: 1.0, sign_flip: false }
    }
}

fn check(name: &'static str, tolerance: f64, residual: Result<f64, CliError>) -> Result<Check, CliError> {
    Ok(Check { name, residual: residual?, tolerance })
}

fn anticommutators() -> f64 {
    let id = ComplexMatrix::identity(16);
    let mut worst = 0.0f64;
    for i in MODES {
        for j in MODES {
            let (a_i, a_j) = (annihilation(i), annihilation(j));
            let delta = if i == j { id.clone() } else { ComplexMatrix::zeros(16, 16) };
            worst = worst
                .max(a_i.anticommutator(&creation(j)).max_abs_diff(&delta))
                .max(a_i.anticommutator(&a_j).max_abs());
        }
    }
    worst
}

/// ½ω(σ_y⊗1 + 1⊗σ_y) against the hand-entered 4×4 matrix (standard sign).
fn symmetrized_construction(sy: &ComplexMatrix, omega: f64) -> Result<f64, CliError> {
    let ours = symmetrize_drive(&Hamiltonian::new(sy.scale_real(omega))?, 2)?;
    let z = ZERO;
    let expected = ComplexMatrix::from_rows(&[
        vec![z, -I, -I, z],
        vec![I, z, z, -I],
        vec![I, z, z, -I],
        vec![z, I, I, z],
    ])
    .scale_real(0.5 * omega);
    Ok(ours.matrix().max_abs_diff(&expected))
}

fn sample_config(omega: f64) -> EngineConfig {
    let period = 2.0 * PI / omega.abs();
    EngineConfig { dt: period / 100.0, total_time: period, omega, ..Default::default() }
}

fn triplet_generator_check(sy: &ComplexMatrix, omega: f64) -> Result<f64, CliError> {
    let id = ComplexMatrix::identity(2);
    let g = Hamiltonian::new((&sy.kron(&id) + &id.kron(sy)).scale_real(omega))?;
    let traj = evolve_generator(&triplet_closed_form(FRAC_PI_6, omega, 0.0), &g, &sample_config(omega))?;
    Ok(traj.max_distance(|t| triplet_closed_form(FRAC_PI_6, omega, t)))
}

fn not_gate_generator_check(sy: &ComplexMatrix, omega: f64) -> Result<f64, CliError> {
    let mut g = ComplexMatrix::zeros(4, 4);
    g[(1, 2)] = sy[(0, 1)] * omega;
    g[(2, 1)] = sy[(1, 0)] * omega;
    let traj = evolve_generator(&not_gate_closed_form(FRAC_PI_4, omega, 0.0), &Hamiltonian::new(g)?, &sample_config(omega))?;
    Ok(traj.max_distance(|t| not_gate_closed_form(FRAC_PI_4, omega, t)))
}

fn penalty_spectrum(e: &PenaltyEnergies) -> Result<f64, CliError> {
    let h = penalty_hamiltonian(e);
    let idx = sector(2);
    let mut block = ComplexMatrix::zeros(idx.len(), idx.len());
    for (a, &i) in idx.iter().enumerate() {
        for (b, &j) in idx.iter().enumerate() {
            block[(a, b)] = h.matrix()[(i, j)];
        }
    }
    let got = eig_hermitian(&block)?.values;
    let mut want = vec![0.0, 0.0, e.e_a, e.e_b, e.e_c, e.e_d];
    want.sort_by(f64::total_cmp);
    Ok(got.iter().zip(&want).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
}

fn penalty_along_rotation(e: &PenaltyEnergies, omega: f64) -> Result<f64, CliError> {
    let h = penalty_hamiltonian(e);
    let emb = QubitEmbedding::new();
    let mut worst = 0.0f64;
    for k in 0..=100 {
        let t = k as f64 * 2.0 * PI / omega.abs() / 100.0;
        let lifted = emb.lift_state(&not_gate_closed_form(FRAC_PI_4, omega, t))?;
        worst = worst.max(lifted.expectation(h.matrix()).norm());
    }
    Ok(worst)
}

fn not_gate_variational(theta0: f64, enforce: bool, total_time: f64) -> Result<Vec<watchdog_core::StateVector>, Error> {
    let cfg = EngineConfig {
        dt: 1e-2,
        total_time,
        engine: EngineKind::Variational,
        enforce_subspace: enforce,
        ..Default::default()
    };
    let target = DiagonalTarget::on_subsystem(&[2, 2], 0, theta0, 1.0)?;
    let s0 = not_gate_closed_form(theta0, 1.0, 0.0);
    Ok(evolve_variational(&s0, &target, &Subspace::computational(4, &[1, 2]), &cfg)?.states)
}

/// Per-step distance between runs with condition (i) on and off.
fn redundancy_at_quarter_pi() -> Result<f64, CliError> {
    // stays below the reflection point ϑ + ωt = π/2
    let on = not_gate_variational(FRAC_PI_4, true, 0.78)?;
    let off = not_gate_variational(FRAC_PI_4, false, 0.78)?;
    Ok(on.iter().zip(&off).map(|(a, b)| a.distance(b)).fold(0.0, f64::max))
}

/// 0 when the unconstrained run at ϑ = 0 reports DEGENERATE_OPTIMUM at step 1.
fn degenerate_at_zero() -> Result<f64, CliError> {
    Ok(match not_gate_variational(0.0, false, 0.5) {
        Err(Error::DegenerateOptimum { step: 1, .. }) => 0.0,
        _ => 1.0,
    })
}

fn zeno_freeze(omega: f64) -> Result<f64, CliError> {
    let s0 = not_gate_closed_form(0.0, omega, 0.0);
    let local = single_drive(&DriveSpec { omega, theta0: 0.0, target: 1 }, 2, 2)?;
    let cfg = EngineConfig { dt: 1e-3, total_time: FRAC_PI_2, omega, engine: EngineKind::Zeno, ..Default::default() };
    let traj = evolve_zeno(&s0, &local, &Subspace::computational(4, &[1, 2]), &cfg)?;
    Ok(traj.states.iter().map(|s| (1.0 - s.fidelity(&s0)).abs()).fold(0.0, f64::max))
}

fn fermion_silence(e: &PenaltyEnergies) -> Result<f64, CliError> {
    let cfg = EngineConfig { dt: 1e-2, total_time: 0.8, engine: EngineKind::Variational, ..Default::default() };
    Ok(fermion_variational_run(0.3, e, &cfg)?.max_energy)
}

fn polarizer_product() -> Result<f64, CliError> {
    let mut worst = 0.0f64;
    for n in [1usize, 10, 1000] {
        let out = polarizer_drag(n, FRAC_PI_2)?;
        worst = worst.max((out.survival - (FRAC_PI_2 / n as f64).cos().powi(2 * n as i32)).abs());
    }
    Ok(worst)
}

pub fn run_suite(opts: &VerifyOptions) -> Result<Vec<Check>, CliError> {
    let sy = if opts.sign_flip { sigma_y().scale_real(-1.0) } else { sigma_y() };
    let (e, omega) = (&opts.energies, opts.omega);
    e.validate()?;
    Ok(vec![
        check("anticommutators", 1e-14, Ok(anticommutators()))?,
        check("symmetrized-drive-construction", 1e-15, symmetrized_construction(&sy, omega))?,
        check("triplet-generator", 1e-9, triplet_generator_check(&sy, omega))?,
        check("not-gate-generator", 1e-9, not_gate_generator_check(&sy, omega))?,
        check("penalty-spectrum", 1e-12, penalty_spectrum(e))?,
        check("generator-penalty-commutator", 1e-12, commutator_check(e, omega).map_err(CliError::from))?,
        check("penalty-along-rotation", 1e-10, penalty_along_rotation(e, omega))?,
        check("redundancy-quarter-pi", 1e-12, redundancy_at_quarter_pi())?,
        check("redundancy-degenerate-at-zero", 0.0, degenerate_at_zero())?,
        check("zeno-freeze", 1e-12, zeno_freeze(omega))?,
        check("fermion-variational-silence", 1e-8, fermion_silence(e))?,
        check("polarizer-product", 1e-12, polarizer_product())?,
    ])
}

pub fn render_text(checks: &[Check]) -> String {
    let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    let mut s = String::new();
    for c in checks {
        s += &format!(
            "{} {:<width$} residual={:.3e} tol={:.0e}\n",
            if c.pass() { "PASS" } else { "FAIL" },
            c.name,
            c.residual,
            c.tolerance
        );
    }
    let failed = checks.iter().filter(|c| !c.pass()).count();
    s += &format!("{} checks, {failed} failed\n", checks.len());
    s
}

pub fn render_json(checks: &[Check]) -> String {
    let items: Vec<Value> = checks
        .iter()
        .map(|c| json!({ "name": c.name, "residual": c.residual, "tolerance": c.tolerance, "pass": c.pass() }))
        .collect();
    let doc = json!({ "all_pass": checks.iter().all(Check::pass), "checks": items });
    let mut s = serde_json::to_string_pretty(&doc).expect("valid JSON value");
    s.push('\n');
    s
}
