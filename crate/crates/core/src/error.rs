use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("resource limit exceeded: {what} needs {needed} entries, budget is {budget}")]
    Resource {
        what: String,
        needed: u128,
        budget: u128,
    },

    #[error("invalid argument: {0}")]
    Argument(String),

    /// A map that should be SL2-equivariant sent a highest-weight vector to a
    /// non-multiple of the expected target vector.
    #[error("equivariance violation: {0}")]
    Equivariance(String),

    /// A dimension fixed by the underlying geometry came out wrong.
    #[error("convention violation: {0}")]
    Convention(String),

    #[error("Hilbert function is not eventually polynomial within the supplied window")]
    NonPolynomialTail,

    #[error("differentials do not compose to zero at position {position}, degree {degree}")]
    NotAComplex { position: usize, degree: i64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }
}
