use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not Hermitian (max deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("input vectors are linearly dependent (vector {index} has residual norm {residual:.3e})")]
    RankDeficient { index: usize, residual: f64 },

    #[error("zero-norm vector cannot be normalized")]
    ZeroNorm,

    #[error("invalid drive target {target} for {n_particles} particle(s)")]
    InvalidTarget { target: usize, n_particles: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("state annihilated by projection at step {step} (norm {norm:.3e})")]
    Annihilated { step: usize, norm: f64 },

    #[error("DEGENERATE_OPTIMUM at step {step}: {detail}")]
    DegenerateOptimum { step: usize, detail: String },

    #[error("INFEASIBLE at step {step}: {detail}")]
    Infeasible { step: usize, detail: String },

    #[error("AMBIGUOUS_PAIRING: assignment {assignment} has {candidates} partners at Hamming distance {distance}")]
    AmbiguousPairing {
        assignment: String,
        candidates: usize,
        distance: u32,
    },

    #[error("network has {n_qubits} qubits, limit is {limit}")]
    SizeLimit { n_qubits: usize, limit: usize },

    #[error("network is unsatisfiable")]
    Unsatisfiable,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
