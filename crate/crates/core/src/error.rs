use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unsupported parameters: {0}")]
    Unsupported(String),

    #[error("invalid Euler square: {0}")]
    InvalidSquare(String),

    #[error("block ({row}, {col}) is not a circulant permutation matrix")]
    NotCpm { row: usize, col: usize },

    #[error("enumeration budget of {budget} steps exceeded")]
    BudgetExceeded { budget: u64 },

    #[error("check node {check} has degree {degree}, above the cap {cap}")]
    DegreeCapExceeded {
        check: usize,
        degree: usize,
        cap: usize,
    },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("LDPC construction failed after {attempts} attempts: {reason}")]
    ConstructionFailure { attempts: usize, reason: String },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by bad user input rather than runtime failure.
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::Io(_) | Error::ConstructionFailure { .. })
    }
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
