use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input outside the region where the operation is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// The matching function has no sign change on the bracket.
    #[error("no sign change of the matching function on [{lo}, {hi}]")]
    Bracket { lo: f64, hi: f64 },

    /// The step-size controller of the ODE integrator gave up.
    #[error("integration failed: {0}")]
    Integration(String),

    /// Two routes that must agree did not.
    #[error("consistency check failed: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
