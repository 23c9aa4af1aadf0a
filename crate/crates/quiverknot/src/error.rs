use std::path::PathBuf;

use quiverknot_core::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum AppError {
    /// Bad flags, specs or parameters.
    #[error("{0}")]
    Usage(String),
    #[error("catalog entry `{entry}`: {message}")]
    Catalog { entry: String, message: String },
    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl AppError {
    /// 2 for usage and parameter errors, 3 for data and validation errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Usage(_) => 2,
            AppError::Core(CoreError::InvalidParameter(_) | CoreError::Unsupported(_)) => 2,
            _ => 3,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        AppError::Io { path: path.into(), source }
    }
}

pub type Result<T> = std::result::Result<T, AppError>;
