mod config;
mod error;
mod output;
mod scenario;
mod sweep;
mod verify;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use watchdog_core::fermion::PenaltyEnergies;

use config::{Engine, Format, Kind, ScenarioConfig};
use error::{exit, CliError};
use sweep::Axis;
use verify::VerifyOptions;

#[derive(Parser)]
#[command(name = "watchdog", version, about = "Constrained-evolution scenarios: run, sweep, verify")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario and write its trajectory table.
    Run(ScenarioArgs),
    /// Run a scenario once per axis value and write a summary table.
    Sweep(SweepArgs),
    /// Run the identity suite.
    Verify(VerifyArgs),
}

#[derive(Args, Clone)]
struct ScenarioArgs {
    /// Scenario kind (may come from --config instead).
    #[arg(value_enum)]
    kind: Option<Kind>,
    /// TOML scenario file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    engine: Option<Engine>,
    #[arg(long)]
    dt: Option<f64>,
    /// Total time.
    #[arg(long = "T", visible_alias = "total-time")]
    total_time: Option<f64>,
    #[arg(long)]
    omega: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    theta0: Option<f64>,
    /// Drop the feasible-space condition in the variational engine.
    #[arg(long)]
    no_enforce: bool,
    /// Polarizer: number of filters.
    #[arg(long)]
    steps: Option<usize>,
    /// Polarizer: total angle.
    #[arg(long, allow_hyphen_values = true)]
    angle: Option<f64>,
    /// Network description file.
    #[arg(long)]
    network: Option<PathBuf>,
    /// Network: NOT chain with this many gates.
    #[arg(long)]
    chain: Option<usize>,
    /// Network: driven qubit (default: last).
    #[arg(long)]
    driven: Option<usize>,
    #[arg(long)]
    target_bit: Option<u8>,
    /// Fermion penalty energies E_a,E_b,E_c,E_d.
    #[arg(long, value_delimiter = ',')]
    energies: Option<Vec<f64>>,
    #[arg(long)]
    energy_floor: Option<f64>,
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Print the normalized configuration as TOML and exit.
    #[arg(long)]
    dump_config: bool,
}

impl ScenarioArgs {
    fn resolve(&self) -> Result<ScenarioConfig, CliError> {
        let file = match &self.config {
            Some(p) => ScenarioConfig::load(p)?,
            None => ScenarioConfig::default(),
        };
        let energies = match &self.energies {
            Some(v) => Some(<[f64; 4]>::try_from(v.as_slice()).map_err(|_| {
                CliError::Config("--energies takes four values".into())
            })?),
            None => None,
        };
        let flags = ScenarioConfig {
            kind: self.kind,
            engine: self.engine,
            dt: self.dt,
            total_time: self.total_time,
            omega: self.omega,
            theta0: self.theta0,
            enforce_subspace: self.no_enforce.then_some(false),
            steps: self.steps,
            angle: self.angle,
            network: self.network.clone(),
            chain: self.chain,
            driven: self.driven,
            target_bit: self.target_bit,
            energies,
            energy_floor: self.energy_floor,
            output: self.output.clone(),
            format: self.format,
        };
        let mut merged = file.merge(flags);
        // a flag-given source replaces the file's
        if self.network.is_some() {
            merged.chain = None;
        } else if self.chain.is_some() {
            merged.network = None;
        }
        Ok(merged)
    }
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    scenario: ScenarioArgs,
    #[arg(long, value_enum)]
    axis: Axis,
    /// Comma-separated axis values.
    #[arg(long, allow_hyphen_values = true)]
    values: String,
}

#[derive(Args)]
struct VerifyArgs {
    /// Machine-readable report.
    #[arg(long)]
    json: bool,
    #[arg(long, value_delimiter = ',')]
    energies: Option<Vec<f64>>,
    #[arg(long)]
    omega: Option<f64>,
    /// Negative control: flip the sign of σ_y in the drive constructions.
    #[arg(long, hide = true)]
    inject_sign_flip: bool,
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::io(p, e)),
        None => {
            let mut out = std::io::stdout().lock();
            match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
                // a closed reader (`| head`) is not an error
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::io(Path::new("<stdout>"), e)),
                _ => Ok(()),
            }
        }
    }
}

fn run(args: &ScenarioArgs) -> Result<i32, CliError> {
    let cfg = args.resolve()?.normalize()?;
    if args.dump_config {
        write_or_print(None, &cfg.to_toml())?;
        return Ok(exit::OK);
    }
    let out = scenario::run_scenario(&cfg)?;
    let text = output::render(&cfg, &out);
    let line = out.summary.line(&cfg);
    write_or_print(cfg.output.as_deref(), &text)?;
    if cfg.output.is_some() {
        println!("{line}");
    } else {
        eprintln!("{line}");
    }
    Ok(exit::OK)
}

fn sweep_cmd(args: &SweepArgs) -> Result<i32, CliError> {
    let template = args.scenario.resolve()?;
    let values = sweep::parse_values(&args.values)?;
    let rows = sweep::sweep(&template, args.axis, &values)?;
    write_or_print(template.output.as_deref(), &sweep::to_csv(args.axis, &rows))?;
    let failed = rows.iter().filter(|r| r.failed()).count();
    if failed > 0 {
        eprintln!("{failed} of {} sweep runs failed", rows.len());
        return Ok(exit::CHECK_FAILED);
    }
    Ok(exit::OK)
}

fn verify_cmd(args: &VerifyArgs) -> Result<i32, CliError> {
    let mut opts = VerifyOptions { sign_flip: args.inject_sign_flip, ..Default::default() };
    if let Some(e) = &args.energies {
        if e.len() != 4 {
            return Err(CliError::Config("--energies takes four values".into()));
        }
        let floor = e.iter().copied().fold(f64::INFINITY, f64::min);
        opts.energies = PenaltyEnergies::new(e[0], e[1], e[2], e[3], floor)
            .map_err(|err| CliError::Config(err.to_string()))?;
    }
    if let Some(w) = args.omega {
        if !(w.is_finite() && w != 0.0) {
            return Err(CliError::Config("omega must be finite and non-zero".into()));
        }
        opts.omega = w;
    }
    let checks = verify::run_suite(&opts)?;
    let report = if args.json { verify::render_json(&checks) } else { verify::render_text(&checks) };
    write_or_print(None, &report)?;
    Ok(if checks.iter().all(verify::Check::pass) { exit::OK } else { exit::CHECK_FAILED })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run(a) => run(a),
        Command::Sweep(a) => sweep_cmd(a),
        Command::Verify(a) => verify_cmd(a),
    };
    let code = match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
