use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("no convergence after {iterations} iterations: {context}")]
    Convergence { iterations: usize, context: String },

    #[error("too few observations: need at least {needed}, got {got}")]
    TooFewObservations { needed: usize, got: usize },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("line {line}: field `{field}`: {message}")]
    Parse { line: u64, field: String, message: String },

    #[error("participant {participant}: duplicate trial_index {index}")]
    DuplicateTrial { participant: String, index: u32 },

    #[error("participant {participant}: trial indices not contiguous ({previous} followed by {next})")]
    NonContiguous {
        participant: String,
        previous: u32,
        next: u32,
    },

    #[error("cluster {0} has no go reaction times")]
    EmptyCluster(&'static str),

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        Error::Io {
            path: path.display().to_string(),
            source,
        }
    }
}
