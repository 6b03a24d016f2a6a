use sgthresh_core::ErrorKind;
use thiserror::Error;

use crate::formats::ParseError;

pub type LabResult<T> = std::result::Result<T, LabError>;

#[derive(Debug, Error)]
pub enum LabError {
    #[error(transparent)]
    Core(#[from] sgthresh_core::Error),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
    #[error("acceptance failure: {0}")]
    Acceptance(String),
}

impl LabError {
    /// Short machine-readable code printed before any human text.
    pub fn code(&self) -> &'static str {
        match self {
            LabError::Core(e) if e.kind() == ErrorKind::Capacity => "capacity",
            LabError::Acceptance(_) => "acceptance",
            LabError::Io { .. } => "io",
            _ => "input",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.code() {
            "capacity" => 2,
            "acceptance" => 3,
            _ => 1,
        }
    }
}
