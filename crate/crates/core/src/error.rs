use thiserror::Error;

/// Failure classes shared by every operation.
///
/// The CLI maps these onto distinct exit codes, so new variants should only
/// be added together with a code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0}")]
    InvalidInput(String),
    #[error("hypothesis failed: {0}")]
    Hypothesis(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn hypothesis(msg: impl Into<String>) -> Self {
        Error::Hypothesis(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    /// Short machine-readable tag used in structured error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid_input",
            Error::Hypothesis(_) => "hypothesis",
            Error::Resource(_) => "resource",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
