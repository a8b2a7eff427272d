use thiserror::Error;

/// Errors surfaced by the harness.
#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] charvan_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl HarnessError {
    pub fn input(msg: impl Into<String>) -> Self {
        HarnessError::Input(msg.into())
    }

    /// Process exit code: 3 for resource limits, 2 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Core(e) if e.is_resource() => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;
