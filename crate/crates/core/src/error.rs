use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: String, reason: String },

    #[error("missing drive input: {0}")]
    MissingDriveInput(&'static str),

    #[error("drive `{0}` given both directly and through its physical inputs")]
    ConflictingDriveInput(&'static str),

    #[error("steady-state loop did not converge after {iterations} iterations (last |Δq_s| values: {trace:?})")]
    SteadyStateNotConverged { iterations: usize, trace: Vec<f64> },

    #[error("eigenvalue iteration failed for {0}")]
    EigenFailure(&'static str),

    #[error("drift matrix is unstable (max Re λ = {max_re:e})")]
    Unstable { max_re: f64 },

    #[error("singular matrix in {0}")]
    Singular(&'static str),

    #[error("covariance matrix has odd dimension {0}")]
    OddDimension(usize),

    #[error("symplectic spectrum has imaginary residue {residue:e}")]
    ComplexSymplectic { residue: f64 },

    #[error("monogamy violated: residual contangle {value:e} for focus {focus}")]
    MonogamyViolation { focus: String, value: f64 },

    #[error("unknown mode label `{0}`")]
    UnknownMode(String),

    #[error("invalid mode set: {0}")]
    InvalidModeSet(String),

    #[error("unknown measure `{0}`")]
    UnknownMeasure(String),

    #[error("unknown figure `{id}`; valid ids: {valid}")]
    UnknownFigure { id: String, valid: String },

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),

    #[error("config error in {path}: {message}")]
    Config { path: PathBuf, message: String },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn invalid(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            field: field.into(),
            reason: reason.into(),
        }
    }
}
