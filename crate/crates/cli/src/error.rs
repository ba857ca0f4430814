use thiserror::Error;

/// Failure of a CLI command, carrying its exit status.
#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed flags or a distribution spec that does not parse.
    #[error("{0}")]
    Usage(String),
    /// Parameters rejected by the library.
    #[error("{0}")]
    Parameters(evt_core::Error),
    /// A validity guard tripped or a computation failed.
    #[error("{0}")]
    Compute(evt_core::Error),
    /// Output could not be written.
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// Process exit code.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) | Self::Parameters(_) | Self::Io(_) => 2,
            Self::Compute(_) => 3,
        }
    }
}

impl From<evt_core::Error> for CliError {
    fn from(e: evt_core::Error) -> Self {
        match e {
            evt_core::Error::InvalidParameters(_) => Self::Parameters(e),
            _ => Self::Compute(e),
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        match e.into_kind() {
            csv::ErrorKind::Io(io) => Self::Io(io),
            other => Self::Io(std::io::Error::other(format!("{other:?}"))),
        }
    }
}

/// Result alias for CLI operations.
pub type Result<T, E = CliError> = std::result::Result<T, E>;
