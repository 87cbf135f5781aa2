use thiserror::Error;

/// Errors surfaced by the library.
///
/// Everything here is exact arithmetic on finite data, so the only failure
/// modes are bad inputs, blown enumeration guards, pole hits during rational
/// evaluation and internal consistency checks that double as bug detectors.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("enumeration guard exceeded: {0}")]
    GuardExceeded(String),
    #[error("evaluation point lies on a pole of a denominator factor")]
    Pole,
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
