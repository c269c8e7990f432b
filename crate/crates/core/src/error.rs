use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid coupling graph: {0}")]
    InvalidGraph(String),

    #[error("invalid model parameters: {0}")]
    InvalidParams(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("integration diverged at step {step} (t = {time}); reduce dt")]
    Blowup { step: usize, time: f64 },

    #[error("epsilon {epsilon} outside [{lo}, {hi}) required by {what}")]
    EpsilonOutOfRegime {
        what: &'static str,
        epsilon: f64,
        lo: f64,
        hi: f64,
    },

    #[error("delta {0} outside (0, pi)")]
    InvalidDelta(f64),

    #[error("matrix is not symmetric at ({i}, {j})")]
    Asymmetric { i: usize, j: usize },

    #[error("need at least 3 usable samples for a decay fit, found {found}")]
    InsufficientSamples { found: usize },

    #[error("invalid interval ({lo}, {hi})")]
    InvalidInterval { lo: f64, hi: f64 },

    #[error("config field `{field}`: {message}")]
    Config { field: String, message: String },

    #[error("unknown {registry} `{name}`")]
    UnknownStrategy { registry: &'static str, name: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            field: field.into(),
            message: message.into(),
        }
    }

    /// Numerical aborts map to a distinct process exit code in the CLI.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Blowup { .. })
    }
}
