use hooke_core::Error as CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Core(#[from] CoreError),

    #[error("cannot write {path}: {source}")]
    Io { path: String, source: std::io::Error },

    #[error("verification failed at check `{0}`")]
    Verify(String),
}

impl CliError {
    /// 0 success, 1 verification, 2 configuration, 3 no branch,
    /// 4 quadrature, 5 variational.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verify(_) => 1,
            CliError::Config(_) | CliError::Io { .. } => 2,
            CliError::Core(e) => match e {
                CoreError::NoBranch { .. } => 3,
                CoreError::QuadratureNonConvergence { .. } => 4,
                CoreError::NodeCountUnreachable { .. } | CoreError::Bracket { .. } => 5,
                _ => 2,
            },
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

pub fn config(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}
