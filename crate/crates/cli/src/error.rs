use simulzero::{AnalysisError, ConfigError, InitError, PolyError};
use thiserror::Error;

/// Exit code for a run that ended without convergence.
pub const EXIT_NUMERICAL: i32 = 1;
/// Exit code for bad input or usage.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Init(#[from] InitError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Numerical(String),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Numerical(_) | CliError::Analysis(_) | CliError::Init(_) => EXIT_NUMERICAL,
            _ => EXIT_USAGE,
        }
    }
}
