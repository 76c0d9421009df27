//! Scenario configuration: TOML file layer, flag overrides, normalization.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_6};
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use watchdog_core::dynamics::EngineKind;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Triplet,
    NotGate,
    FermionCheck,
    Polarizer,
    Network,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Triplet => "triplet",
            Kind::NotGate => "not-gate",
            Kind::FermionCheck => "fermion-check",
            Kind::Polarizer => "polarizer",
            Kind::Network => "network",
        }
    }

    fn default_theta0(self) -> f64 {
        match self {
            Kind::Triplet => FRAC_PI_6,
            Kind::NotGate => 0.0,
            Kind::FermionCheck | Kind::Network => FRAC_PI_4,
            Kind::Polarizer => 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    Zeno,
    Generator,
    Variational,
}

impl Engine {
    pub fn as_str(self) -> &'static str {
        self.core().as_str()
    }

    pub fn core(self) -> EngineKind {
        match self {
            Engine::Zeno => EngineKind::Zeno,
            Engine::Generator => EngineKind::Generator,
            Engine::Variational => EngineKind::Variational,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Csv,
    Json,
}

/// Every field is optional in a file; `normalize` fills in the defaults for
/// the chosen kind and drops fields the kind does not use.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct ScenarioConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<Kind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub engine: Option<Engine>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
    #[serde(rename = "T", alias = "total-time", skip_serializing_if = "Option::is_none")]
    pub total_time: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta0: Option<f64>,
    /// Condition (i) in the variational engine.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub enforce_subspace: Option<bool>,
    /// Polarizer: number of filters.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    /// Polarizer: total rotation angle.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub angle: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub network: Option<PathBuf>,
    /// Network: NOT chain of this length instead of a file.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chain: Option<usize>,
    /// Network: driven qubit, defaults to the last one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub driven: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target_bit: Option<u8>,
    /// E_a, E_b, E_c, E_d for the fermion penalty.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub energies: Option<[f64; 4]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub energy_floor: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
}

impl ScenarioConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_toml(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("plain data serializes")
    }

    /// Fields set in `over` win.
    pub fn merge(self, over: ScenarioConfig) -> Self {
        macro_rules! pick {
            ($($f:ident),*) => { Self { $($f: over.$f.or(self.$f)),* } };
        }
        pick!(
            kind, engine, dt, total_time, omega, theta0, enforce_subspace, steps, angle, network,
            chain, driven, target_bit, energies, energy_floor, output, format
        )
    }

    pub fn kind(&self) -> Kind {
        self.kind.expect("normalized config has a kind")
    }

    pub fn engine(&self) -> Engine {
        self.engine.expect("normalized config has an engine")
    }

    /// Fills defaults, validates ranges and clears fields the kind ignores.
    /// Idempotent: normalizing a normalized config changes nothing.
    pub fn normalize(&self) -> Result<Self, CliError> {
        let kind = self
            .kind
            .ok_or_else(|| CliError::Config("no scenario kind given".into()))?;
        let mut out = ScenarioConfig {
            kind: Some(kind),
            output: self.output.clone(),
            format: Some(self.format.unwrap_or(Format::Csv)),
            ..Default::default()
        };
        if kind == Kind::Polarizer {
            let steps = self.steps.unwrap_or(1000);
            let angle = self.angle.unwrap_or(FRAC_PI_2);
            if steps == 0 {
                return Err(CliError::Config("steps must be at least 1".into()));
            }
            if !angle.is_finite() {
                return Err(CliError::Config("angle must be finite".into()));
            }
            out.steps = Some(steps);
            out.angle = Some(angle);
            return Ok(out);
        }

        let engine = self.engine.unwrap_or(Engine::Generator);
        let dt = self.dt.unwrap_or(1e-3);
        // a network run from the default ϑ = π/4 lands on the target at ωt = π/4
        let default_t = if kind == Kind::Network { FRAC_PI_4 } else { FRAC_PI_2 };
        let total_time = self.total_time.unwrap_or(default_t);
        let omega = self.omega.unwrap_or(1.0);
        let theta0 = self.theta0.unwrap_or(kind.default_theta0());
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(CliError::Config(format!("dt = {dt} must be positive")));
        }
        if !(total_time >= dt && total_time.is_finite()) {
            return Err(CliError::Config(format!("T = {total_time} must be at least dt = {dt}")));
        }
        if !omega.is_finite() || !theta0.is_finite() {
            return Err(CliError::Config("omega and theta0 must be finite".into()));
        }
        out.engine = Some(engine);
        out.dt = Some(dt);
        out.total_time = Some(total_time);
        out.omega = Some(omega);
        out.theta0 = Some(theta0);
        if engine == Engine::Variational {
            out.enforce_subspace = Some(self.enforce_subspace.unwrap_or(true));
        }

        match kind {
            Kind::FermionCheck => {
                let e = self.energies.unwrap_or([1.0; 4]);
                let floor = self
                    .energy_floor
                    .unwrap_or_else(|| e.iter().copied().fold(f64::INFINITY, f64::min));
                watchdog_core::fermion::PenaltyEnergies::new(e[0], e[1], e[2], e[3], floor)
                    .map_err(|err| CliError::Config(err.to_string()))?;
                out.energies = Some(e);
                out.energy_floor = Some(floor);
            }
            Kind::Network => {
                match (&self.network, self.chain) {
                    (Some(_), Some(_)) => {
                        return Err(CliError::Config("give either a network file or a chain length".into()))
                    }
                    (None, None) => {
                        return Err(CliError::Config("network scenario needs a network file or a chain length".into()))
                    }
                    (Some(p), None) => out.network = Some(p.clone()),
                    (None, Some(0)) => return Err(CliError::Config("chain length must be at least 1".into())),
                    (None, Some(k)) => out.chain = Some(k),
                }
                if engine == Engine::Zeno {
                    return Err(CliError::Config(
                        "network scenarios run with the generator or variational engine".into(),
                    ));
                }
                let bit = self.target_bit.unwrap_or(1);
                if bit > 1 {
                    return Err(CliError::Config(format!("target bit {bit} is not 0 or 1")));
                }
                out.target_bit = Some(bit);
                out.driven = self.driven;
            }
            _ => {}
        }
        Ok(out)
    }
}
