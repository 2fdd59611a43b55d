use std::io;
use std::path::PathBuf;

/// Errors surfaced by the lab commands. [`LabError::exit_code`] maps them
/// onto the CLI's exit codes.
#[derive(Debug, thiserror::Error)]
pub enum LabError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("config line {line}: {msg}")]
    Config { line: usize, msg: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] tsp_core::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl LabError {
    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        LabError::Io { path: path.into(), source }
    }

    /// 2 for generation or oracle infeasibility, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            LabError::Core(tsp_core::Error::GenerationExhausted(_) | tsp_core::Error::TooLarge(_)) => 2,
            _ => 1,
        }
    }
}
