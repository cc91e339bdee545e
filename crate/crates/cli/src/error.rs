use thiserror::Error;

/// Failures with their exit codes: 2 assertion, 64 usage, 65 numeric, 66 IO.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Assertion(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("numeric error: {0}")]
    Numeric(#[from] gcong::Error),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Assertion(_) => 2,
            CliError::Config(_) => 64,
            CliError::Numeric(gcong::Error::InvalidParameter(_) | gcong::Error::PoleInDomain(_)) => 64,
            CliError::Numeric(_) => 65,
            CliError::Io(_) => 66,
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        match e.into_kind() {
            csv::ErrorKind::Io(io) => CliError::Io(io),
            other => CliError::Io(std::io::Error::other(format!("{other:?}"))),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.into())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
