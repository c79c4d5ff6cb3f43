use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("canonicalization too large: {internal} non-boundary vertices (cap {cap})")]
    CanonicalizationTooLarge { internal: usize, cap: usize },

    #[error("incompatible boundaried graphs: {0}")]
    Incompatible(String),

    #[error("mismatch: {0}")]
    Mismatch(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Io(_) => 2,
            Error::Invalid(_) | Error::Validation(_) | Error::Incompatible(_) => 3,
            Error::Budget(_) | Error::CanonicalizationTooLarge { .. } => 4,
            Error::Mismatch(_) => 5,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
