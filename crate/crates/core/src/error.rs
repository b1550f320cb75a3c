use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument violates the precondition of the called operation.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A shell of the mixture input would have non-positive power.
    #[error("blocklength {n} too small: atom {atom} (pi = {pi}) maps to shell cost {gamma_j} <= 0")]
    BlocklengthTooSmall { n: usize, atom: usize, pi: f64, gamma_j: f64 },

    /// A root bracket could not be established within the configured width.
    #[error("no convergence: {0}")]
    NoConvergence(String),

    /// Mixture components disagree on blocklength or noise variance.
    #[error("mismatched mixture components: {0}")]
    MismatchedComponents(String),
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
