//! Runs one normalized scenario and flattens it into a table.

use watchdog_core::dynamics::{
    evolve_generator, evolve_variational, evolve_zeno, not_gate_closed_form, polarizer_drag, DiagonalTarget,
    EngineConfig, Trajectory,
};
use watchdog_core::fermion::{
    fermion_variational_run, not_gate_generator, penalty_hamiltonian, FermionScenario, PenaltyEnergies,
    QubitEmbedding,
};
use watchdog_core::linalg::matrix::r;
use watchdog_core::network::{
    bit, constrained_subspace, drive_output_experiment, network_penalty_hamiltonian, parse_network,
    ConstraintNetwork, ExperimentEngine, ExperimentStatus,
};
use watchdog_core::statistics::{single_drive, triplet_closed_form, triplet_generator, DriveSpec, TwoParticleSpace};
use watchdog_core::linalg::reduced_diagonal;
use watchdog_core::{Error, Hamiltonian, StateVector, Subspace, C64};

use crate::config::{Engine, Kind, ScenarioConfig};
use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub steps: usize,
    pub terminal_fidelity: f64,
    /// max_t |⟨H⟩|
    pub max_energy: f64,
    pub final_survival: f64,
    /// max_t ‖ψ(t) − ψ_ref(t)‖ (polarizer: |survival − closed form|)
    pub max_error: f64,
    pub t_star: Option<f64>,
    pub terminal_success: Option<f64>,
    pub max_violation: Option<f64>,
}

impl Summary {
    pub fn line(&self, cfg: &ScenarioConfig) -> String {
        let mut s = format!("kind={}", cfg.kind().as_str());
        if let Some(e) = cfg.engine {
            s += &format!(" engine={}", e.as_str());
        }
        s += &format!(
            " steps={} terminal_fidelity={:.12} max_energy={:.3e} survival={:.12} max_error={:.3e}",
            self.steps, self.terminal_fidelity, self.max_energy, self.final_survival, self.max_error
        );
        if let Some(p) = self.terminal_success {
            s += &format!(" terminal_success={p:.12}");
            s += &match self.t_star {
                Some(t) => format!(" t_star={t:.6}"),
                None => " t_star=none".into(),
            };
        }
        if let Some(v) = self.max_violation {
            s += &format!(" max_violation={v:.3e}");
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioOutput {
    pub table: Table,
    pub summary: Summary,
}

fn engine_config(cfg: &ScenarioConfig) -> EngineConfig {
    EngineConfig {
        dt: cfg.dt.expect("normalized"),
        total_time: cfg.total_time.expect("normalized"),
        engine: cfg.engine().core(),
        omega: cfg.omega.expect("normalized"),
        enforce_subspace: cfg.enforce_subspace.unwrap_or(true),
        drive_target: 0,
    }
}

/// Loads the network of a normalized `network` config.
pub fn load_network(cfg: &ScenarioConfig) -> Result<ConstraintNetwork, CliError> {
    if let Some(k) = cfg.chain {
        return Ok(ConstraintNetwork::not_chain(k)?);
    }
    let path = cfg.network.as_ref().expect("normalized network config");
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_network(&text).map_err(|e| match e {
        Error::Parse { line, message } => CliError::Config(format!("{}:{line}: {message}", path.display())),
        other => CliError::Core(other),
    })
}

pub fn run_scenario(cfg: &ScenarioConfig) -> Result<ScenarioOutput, CliError> {
    match cfg.kind() {
        Kind::Polarizer => polarizer(cfg),
        Kind::Triplet => triplet(cfg),
        Kind::NotGate => not_gate(cfg),
        Kind::FermionCheck => fermion(cfg),
        Kind::Network => network(cfg),
    }
}

/// Assembles the fixed column layout from a trajectory.
fn tabulate(
    traj: &Trajectory,
    dims: &[usize],
    energy: impl Fn(&[C64]) -> f64,
    reference: impl Fn(f64) -> StateVector,
) -> Result<ScenarioOutput, CliError> {
    let labels = traj.states[0].labels().to_vec();
    let mut columns = vec!["t".to_string()];
    for l in &labels {
        columns.push(format!("re{l}"));
        columns.push(format!("im{l}"));
    }
    for (j, &d) in dims.iter().enumerate() {
        for v in 0..d {
            columns.push(format!("p{j}[{v}]"));
        }
    }
    columns.extend(["energy", "survival", "fidelity"].map(String::from));

    let mut rows = Vec::with_capacity(traj.len());
    let (mut max_energy, mut max_error) = (0.0f64, 0.0f64);
    for ((&t, s), &survival) in traj.times.iter().zip(&traj.states).zip(&traj.survival) {
        let amps = s.amplitudes();
        let mut row = Vec::with_capacity(columns.len());
        row.push(t);
        for a in amps {
            row.push(a.re);
            row.push(a.im);
        }
        for j in 0..dims.len() {
            row.extend(reduced_diagonal(amps, dims, j)?);
        }
        let e = energy(amps);
        let reference = reference(t);
        max_energy = max_energy.max(e.abs());
        max_error = max_error.max(s.distance(&reference));
        row.extend([e, survival, s.fidelity(&reference)]);
        rows.push(row);
    }
    let last = rows.last().expect("trajectory has the initial point");
    let summary = Summary {
        steps: traj.len() - 1,
        terminal_fidelity: last[last.len() - 1],
        max_energy,
        final_survival: traj.final_survival(),
        max_error,
        t_star: None,
        terminal_success: None,
        max_violation: None,
    };
    Ok(ScenarioOutput { table: Table { columns, rows }, summary })
}

fn dense_energy(h: &Hamiltonian) -> impl Fn(&[C64]) -> f64 + '_ {
    move |v| {
        let hv = h.matrix().apply(v);
        v.iter().zip(&hv).map(|(a, b)| (a.conj() * b).re).sum()
    }
}

fn triplet(cfg: &ScenarioConfig) -> Result<ScenarioOutput, CliError> {
    let ec = engine_config(cfg);
    let (theta0, omega) = (cfg.theta0.expect("normalized"), ec.omega);
    let s0 = triplet_closed_form(theta0, omega, 0.0);
    let g = triplet_generator(omega)?;
    let sym = TwoParticleSpace::qubits().symmetric_subspace();
    let traj = match cfg.engine() {
        Engine::Generator => evolve_generator(&s0, &g, &ec)?,
        Engine::Zeno => {
            let local = single_drive(&DriveSpec { omega, theta0, target: 1 }, 2, 2)?;
            evolve_zeno(&s0, &local, &sym, &ec)?
        }
        Engine::Variational => {
            let target = DiagonalTarget::on_subsystem(&[2, 2], 0, theta0, omega)?;
            evolve_variational(&s0, &target, &sym, &ec)?
        }
    };
    tabulate(&traj, &[2, 2], dense_energy(&g), |t| triplet_closed_form(theta0, omega, t))
}

fn not_gate(cfg: &ScenarioConfig) -> Result<ScenarioOutput, CliError> {
    let ec = engine_config(cfg);
    let (theta0, omega) = (cfg.theta0.expect("normalized"), ec.omega);
    let s0 = not_gate_closed_form(theta0, omega, 0.0);
    let allowed = Subspace::computational(4, &[1, 2]);
    let traj = match cfg.engine() {
        Engine::Generator => evolve_generator(&s0, &Hamiltonian::new(not_gate_generator(omega)?)?, &ec)?,
        Engine::Zeno => {
            let local = single_drive(&DriveSpec { omega, theta0, target: 1 }, 2, 2)?;
            evolve_zeno(&s0, &local, &allowed, &ec)?
        }
        Engine::Variational => {
            let target = DiagonalTarget::on_subsystem(&[2, 2], 0, theta0, omega)?;
            evolve_variational(&s0, &target, &allowed, &ec)?
        }
    };
    let h = Hamiltonian::new(
        QubitEmbedding::new().lower_operator(penalty_hamiltonian(&PenaltyEnergies::default()).matrix())?,
    )?;
    tabulate(&traj, &[2, 2], dense_energy(&h), |t| not_gate_closed_form(theta0, omega, t))
}

fn fermion(cfg: &ScenarioConfig) -> Result<ScenarioOutput, CliError> {
    let ec = engine_config(cfg);
    let (theta0, omega) = (cfg.theta0.expect("normalized"), ec.omega);
    let [e_a, e_b, e_c, e_d] = cfg.energies.expect("normalized");
    let energies = PenaltyEnergies::new(e_a, e_b, e_c, e_d, cfg.energy_floor.expect("normalized"))?;
    let sc = FermionScenario::new(&energies, omega)?;
    let s0 = sc.closed_form(theta0, omega, 0.0);
    let traj = match cfg.engine() {
        Engine::Generator => evolve_generator(&s0, &sc.generator, &ec)?,
        Engine::Zeno => evolve_zeno(&s0, &sc.site_drive, &sc.constraint, &ec)?,
        Engine::Variational => fermion_variational_run(theta0, &energies, &ec)?.trajectory,
    };
    tabulate(&traj, &[4, 4], dense_energy(&sc.penalty), |t| sc.closed_form(theta0, omega, t))
}

fn network(cfg: &ScenarioConfig) -> Result<ScenarioOutput, CliError> {
    let net = load_network(cfg)?;
    let n = net.n_qubits();
    let driven = cfg.driven.unwrap_or(n - 1);
    if driven >= n {
        return Err(CliError::Config(format!("driven qubit {driven} outside a {n}-qubit network")));
    }
    let target_bit = cfg.target_bit.expect("normalized");
    let ec = engine_config(cfg);
    let theta0 = cfg.theta0.expect("normalized");
    let engine = match cfg.engine() {
        Engine::Variational => ExperimentEngine::Variational,
        _ => ExperimentEngine::Generator,
    };
    let rec = drive_output_experiment(&net, driven, target_bit, engine, &ec, theta0)?;
    let traj = match (rec.status, &rec.trajectory) {
        (ExperimentStatus::Completed, Some(t)) => t,
        _ => {
            return Err(CliError::Core(Error::Infeasible {
                step: 0,
                detail: format!("no satisfying assignment has q{driven} = {target_bit}"),
            }))
        }
    };

    // Ideal rotation: uniform amplitude within each value group of the driven bit.
    let cs = constrained_subspace(&net)?;
    let groups: [Vec<usize>; 2] =
        [0, 1].map(|v| cs.assignments.iter().copied().filter(|&x| bit(x, driven, n) == v).collect());
    let s0 = traj.states[0].clone();
    let sign = if target_bit == 1 { 1.0 } else { -1.0 };
    let reference = |t: f64| {
        if groups[0].is_empty() || groups[1].is_empty() {
            return s0.clone();
        }
        let (s, c) = (theta0 + sign * ec.omega * t).sin_cos();
        let mut amps = vec![r(0.0); net.dim()];
        for (g, w) in groups.iter().zip([c, s]) {
            for &x in g {
                amps[x] = r(w / (g.len() as f64).sqrt());
            }
        }
        StateVector::new(amps, net.labels()).expect("normalized by construction")
    };
    let h = network_penalty_hamiltonian(&net)?;
    let mut out = tabulate(traj, &vec![2; n], |v| h.expectation(v), reference)?;
    out.summary.t_star = rec.t_star;
    out.summary.terminal_success = Some(rec.terminal_success);
    out.summary.max_violation = Some(rec.max_violation);
    Ok(out)
}

fn polarizer(cfg: &ScenarioConfig) -> Result<ScenarioOutput, CliError> {
    let n = cfg.steps.expect("normalized");
    let angle = cfg.angle.expect("normalized");
    let out = polarizer_drag(n, angle)?;
    let closed = (angle / n as f64).cos().powi(2 * n as i32);
    let mut states = vec![StateVector::with_dims(vec![r(1.0), r(0.0)], &[2])?];
    for &a in &out.angles {
        let (s, c) = a.sin_cos();
        states.push(StateVector::with_dims(vec![r(c), r(s)], &[2])?);
    }
    let mut times = vec![0.0];
    times.extend(&out.angles);
    let mut survival = vec![1.0];
    survival.extend(&out.survivals);
    let traj = Trajectory { times, states, survival, observables: Vec::new() };
    let mut res = tabulate(
        &traj,
        &[2],
        |_| 0.0,
        |a| {
            let (s, c) = a.sin_cos();
            StateVector::with_dims(vec![r(c), r(s)], &[2]).expect("unit vector")
        },
    )?;
    res.summary.max_error = (out.survival - closed).abs();
    Ok(res)
}
