use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Library(#[from] sh22_core::Error),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("invariant check failed: {0}")]
    Invariant(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Library(sh22_core::Error::InvalidParameter(_)) | CliError::Argument(_) => {
                "parameter"
            }
            CliError::Library(sh22_core::Error::Convergence { .. }) => "convergence",
            CliError::Library(_) => "numeric",
            CliError::Invariant(_) => "invariant",
            CliError::Io(_) | CliError::Csv(_) | CliError::Json(_) => "io",
        }
    }

    /// 2 for bad input, 1 for everything else.
    pub fn exit_code(&self) -> u8 {
        if self.kind() == "parameter" {
            2
        } else {
            1
        }
    }
}
