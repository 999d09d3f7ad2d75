use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("insufficient prefix: {0}")]
    InsufficientPrefix(String),
    /// Analysis finished but a checked property or expected value failed.
    #[error("{0}")]
    Refuted(String),
    #[error(transparent)]
    Analysis(grich::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl From<grich::Error> for CliError {
    fn from(e: grich::Error) -> Self {
        match e {
            grich::Error::InsufficientPrefix(m) => CliError::InsufficientPrefix(m),
            e @ grich::Error::LengthOutOfRange { .. } => CliError::InsufficientPrefix(e.to_string()),
            e => CliError::Analysis(e),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::InsufficientPrefix(_) => 3,
            CliError::Refuted(_) => 4,
            CliError::Analysis(_) | CliError::Io { .. } => 1,
        }
    }
}
