use thiserror::Error;

/// Errors raised by the special-function and integral routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A Gamma function (or a bottom Pochhammer parameter) was asked for its
    /// value at a nonpositive integer where no cancellation rescues it.
    #[error("pole argument: {0} is a nonpositive integer")]
    Pole(f64),

    /// A documented precondition was violated.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A series or quadrature exhausted its budget.
    #[error("{what} did not converge after {steps} steps")]
    NotConverged { what: &'static str, steps: usize },

    /// The connection formula needed for this parameter set degenerates.
    #[error("degenerate connection formula: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
