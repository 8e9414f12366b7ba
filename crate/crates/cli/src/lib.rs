//! Config-driven runner for the `qgan-core` experiments: single-method
//! training, the classical-versus-quantum comparison sweep, and the
//! self-validation suite.

pub mod config;
pub mod history;
pub mod run;
pub mod validate;

use std::path::Path;

use thiserror::Error;

pub use config::{parse_config, ConfigError, ExperimentConfig, Method};
pub use history::{read_history, write_history};
pub use run::{history_file_name, run, run_with_threads, RunOutcome, RunRecord, REPORT_FILE};
pub use validate::{validate, ValidateOptions, ValidationReport};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(#[from] ConfigError),
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("i/o failure on {path}: {message}")]
    Io { path: String, message: String },
}

impl CliError {
    pub(crate) fn io(path: &Path, e: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 1,
            CliError::Numeric(_) => 2,
            CliError::Io { .. } => 3,
        }
    }
}
