use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Compute(String),
    #[error("{0} check(s) reported a mismatch")]
    Mismatch(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Compute(_) => 2,
            CliError::Mismatch(_) => 3,
        }
    }
}

impl From<fishburn_core::Error> for CliError {
    fn from(e: fishburn_core::Error) -> Self {
        CliError::Compute(e.to_string())
    }
}
