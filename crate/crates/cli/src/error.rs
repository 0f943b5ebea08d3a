use std::io;
use std::path::PathBuf;

use morderstats::Error as CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: row {row}: {message}", path.display())]
    Csv { path: PathBuf, row: u64, message: String },
    #[error("{0}")]
    Usage(String),
    #[error("data has dimension {0}; at least 2 is required")]
    Dimension(usize),
    #[error("every cell failed; see manifest.json")]
    AllCellsFailed,
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{0}")]
    Output(String),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>) -> impl FnOnce(io::Error) -> Self {
        let path = path.into();
        move |source| CliError::Io { path, source }
    }

    /// 2 bad input or flags, 3 geometric or numerical failure, 4 dimension
    /// below 2, 5 every experiment cell failed, 1 anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Csv { .. } | CliError::Usage(_) => 2,
            CliError::Dimension(_) => 4,
            CliError::AllCellsFailed => 5,
            CliError::Io { .. } | CliError::Output(_) => 1,
            CliError::Core(e) => match e {
                CoreError::InvalidAlpha(_)
                | CoreError::Config(_)
                | CoreError::NonFinite(_)
                | CoreError::DimensionMismatch { .. } => 2,
                CoreError::Internal(_) => 1,
                _ => 3,
            },
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
