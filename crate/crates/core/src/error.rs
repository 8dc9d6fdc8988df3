use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("budget exceeded for {what}: estimated {estimated}, limit {limit}")]
    Budget {
        what: &'static str,
        estimated: String,
        limit: String,
    },
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

impl Error {
    /// Short machine-readable tag used by the CLI and the C interface.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse(_) => "parse",
            Error::Parameter(_) => "parameter",
            Error::Dimension { .. } => "dimension",
            Error::Budget { .. } => "budget",
            Error::Consistency(_) => "consistency",
        }
    }

    pub(crate) fn budget(what: &'static str, estimated: impl ToString, limit: impl ToString) -> Self {
        Error::Budget {
            what,
            estimated: estimated.to_string(),
            limit: limit.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
