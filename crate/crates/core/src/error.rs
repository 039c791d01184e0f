use thiserror::Error;

/// Errors raised by the exact-arithmetic kernel and the identity modules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("coefficient t^{index} requested from a series known only up to t^{order}")]
    Range { index: usize, order: usize },

    #[error("pole at t = {pole} has multiplicity {multiplicity}; only simple poles are supported")]
    UnsupportedMultiplicity { pole: String, multiplicity: usize },

    #[error("enumeration needs {required} monomials, budget is {budget}")]
    Budget { required: u128, budget: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
