use std::path::Path;

use asdim_core::{BuildError, CoverError, GraphError, TheoremError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    Parse { path: String, message: String },
    #[error("configuration error: {0}")]
    Config(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Parse { .. } | CliError::Config(_) | CliError::Io { .. } => 2,
            CliError::Precondition(_) => 3,
        }
    }

    pub fn parse(path: &Path, message: impl ToString) -> Self {
        CliError::Parse {
            path: path.display().to_string(),
            message: message.to_string(),
        }
    }

    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }
}

impl From<BuildError> for CliError {
    fn from(e: BuildError) -> Self {
        match e {
            BuildError::TooLarge(_) | BuildError::CapExceeded(_) => CliError::Precondition(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<CoverError> for CliError {
    fn from(e: CoverError) -> Self {
        match e {
            CoverError::CapExceeded { .. } | CoverError::ZeroRadius => CliError::Precondition(e.to_string()),
            _ => CliError::Verification(e.to_string()),
        }
    }
}

impl From<TheoremError> for CliError {
    fn from(e: TheoremError) -> Self {
        match e {
            TheoremError::Build(b) => b.into(),
            TheoremError::Cover(c) => c.into(),
            TheoremError::Precondition(msg) => CliError::Precondition(msg),
            TheoremError::Stage { .. } => CliError::Verification(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}
