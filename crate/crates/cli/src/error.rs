use std::path::Path;

use thiserror::Error;
use watchdog_core::Error as CoreError;

/// Exit statuses. Engine failures each get their own code.
pub mod exit {
    pub const OK: i32 = 0;
    /// verify found a failing identity, or a sweep row failed
    pub const CHECK_FAILED: i32 = 1;
    pub const CONFIG: i32 = 2;
    pub const DEGENERATE_OPTIMUM: i32 = 3;
    pub const AMBIGUOUS_PAIRING: i32 = 4;
    pub const INFEASIBLE: i32 = 5;
    pub const IO: i32 = 6;
    pub const ENGINE: i32 = 7;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io { path: path.display().to_string(), source }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => exit::CONFIG,
            CliError::Io { .. } => exit::IO,
            CliError::Core(e) => match e {
                CoreError::DegenerateOptimum { .. } => exit::DEGENERATE_OPTIMUM,
                CoreError::AmbiguousPairing { .. } => exit::AMBIGUOUS_PAIRING,
                CoreError::Infeasible { .. } | CoreError::Unsatisfiable => exit::INFEASIBLE,
                CoreError::Parse { .. }
                | CoreError::SizeLimit { .. }
                | CoreError::InvalidArgument(_)
                | CoreError::InvalidTarget { .. } => exit::CONFIG,
                _ => exit::ENGINE,
            },
        }
    }

    /// Short tag for sweep rows.
    pub fn tag(&self) -> &'static str {
        match self.exit_code() {
            exit::CONFIG => "CONFIG",
            exit::IO => "IO",
            exit::DEGENERATE_OPTIMUM => "DEGENERATE_OPTIMUM",
            exit::AMBIGUOUS_PAIRING => "AMBIGUOUS_PAIRING",
            exit::INFEASIBLE => "INFEASIBLE",
            _ => "ENGINE",
        }
    }
}
