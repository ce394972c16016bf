//! Std companion to `laurent-lab-core`: JSON and CSV formats, a parallel
//! census driver and the `laurent-lab` command line.

pub mod app;
pub mod format;
pub mod parallel;

/// Environment variable capping census worker threads.
pub const THREADS_ENV: &str = "LAURENT_LAB_THREADS";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad user input; exit code 2.
    #[error("{0}")]
    Invalid(String),
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
            CliError::Invalid(_) | CliError::Json(_) => 2,
            CliError::Io(_) | CliError::Csv(_) => 3,
        }
    }
}
