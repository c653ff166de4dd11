use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the set where the operation is defined.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// Hermitian eigendecomposition failed to converge.
    #[error("eigendecomposition failed for {dim}x{dim} matrix (max |entry| = {max_abs:.3e}, asymmetry = {asymmetry:.3e})")]
    Eigen {
        dim: usize,
        max_abs: f64,
        asymmetry: f64,
    },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
