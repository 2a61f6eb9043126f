use std::path::PathBuf;

/// Errors produced anywhere in the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{function}: series did not converge within {terms} terms (last term magnitude {last_term:e})")]
    SeriesNonConvergence {
        function: &'static str,
        terms: usize,
        last_term: f64,
    },

    #[error("{function}: argument ({x}, {y}) outside the kernel triangle ({expected})")]
    KernelDomain {
        function: &'static str,
        x: f64,
        y: f64,
        expected: &'static str,
    },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("gamma = {gamma} is resonant with Neumann mode n = {mode} (gamma + (n pi)^2 = {residual:e})")]
    Resonance { gamma: f64, mode: usize, residual: f64 },

    #[error("elliptic operator is singular at discrete Neumann mode k = {mode} (shift {shift}, eigenvalue {eigenvalue})")]
    SingularElliptic {
        mode: usize,
        shift: f64,
        eigenvalue: f64,
    },

    #[error("{what}: zero pivot at row {row}")]
    SingularMatrix { what: &'static str, row: usize },

    #[error("grid mismatch: expected {expected} nodes, got {actual}")]
    GridMismatch { expected: usize, actual: usize },

    #[error("kernel orientation mismatch: {0}")]
    Orientation(&'static str),

    #[error("successive approximation did not converge in {iterations} iterations (last update {last_update:e})")]
    KernelNonConvergence { iterations: usize, last_update: f64 },

    #[error("decay fit: {0}")]
    DecayFit(String),

    #[error("configuration: {0}")]
    Config(String),

    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
