use thiserror::Error;

/// Failure classes shared by every module.
///
/// The split matters to callers: a `Precondition` means an identity does not
/// apply to the given input, `Budget` means the computation was refused for
/// size, and `Verification` means an identity that should hold did not.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("budget exceeded: {what} needs {needed} elements, budget is {budget}")]
    Budget {
        what: String,
        needed: u128,
        budget: u128,
    },
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invalid(msg.into()))
}
