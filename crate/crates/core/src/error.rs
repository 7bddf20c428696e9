use thiserror::Error;

/// Errors raised by the library. Verification *failures* are not errors:
/// verifiers return reports whose checks may fail.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("resource limit exceeded: {what} would exceed budget of {budget}")]
    ResourceLimit { what: String, budget: u64 },

    #[error("outside the supported hypotheses: {0}")]
    OutOfHypothesis(String),

    #[error("numeric domain error: {0}")]
    NumericDomain(String),

    #[error("no feasible point: {0}")]
    EmptyFeasible(String),

    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
