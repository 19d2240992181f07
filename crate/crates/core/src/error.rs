use std::path::PathBuf;

/// Errors raised anywhere in the scheduling pipeline.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: unknown gate `{name}`")]
    UnknownGate { name: String, line: usize },

    #[error("line {line}: index {index} out of range for register `{register}` of size {size}")]
    BadIndex {
        line: usize,
        register: String,
        index: usize,
        size: usize,
    },

    #[error("no duration entry for gate `{0}`")]
    MissingDuration(String),

    #[error("duration table not found at {}", .0.display())]
    MissingDurationFile(PathBuf),

    #[error("unknown device profile `{0}`")]
    UnknownProfile(String),

    #[error("gate {gate} ({kind}) acts on uncoupled qubits {a} and {b}")]
    ConnectivityViolation {
        gate: usize,
        kind: String,
        a: usize,
        b: usize,
    },

    #[error("gate {gate} touches unusable qubit {qubit}")]
    UnusableQubit { gate: usize, qubit: usize },

    #[error("invalid input: {0}")]
    BadInput(String),

    #[error("distribution is not normalized or has negative entries (sum = {0})")]
    BadDistribution(f64),

    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 10,
            Error::UnknownGate { .. } => 11,
            Error::BadIndex { .. } => 12,
            Error::MissingDuration(_) | Error::MissingDurationFile(_) => 13,
            Error::UnknownProfile(_) => 14,
            Error::ConnectivityViolation { .. } | Error::UnusableQubit { .. } => 15,
            Error::BadInput(_) | Error::BadDistribution(_) => 16,
            Error::InternalInvariantViolation(_) => 17,
            Error::Io(_) | Error::Json(_) | Error::Csv(_) => 1,
        }
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
