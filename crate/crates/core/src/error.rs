use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An input violated a documented bound; the message names the bound.
    #[error("{0}")]
    Domain(String),

    /// An occupancy table would exceed the configured entry limit.
    #[error("occupancy table needs {needed} entries, limit is {limit}")]
    TableTooLarge { needed: u128, limit: usize },

    #[error("Gauss-Legendre node {index} of {m} did not converge in {steps} Newton steps")]
    QuadratureNotConverged { index: usize, m: usize, steps: usize },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    EigenNotConverged { sweeps: usize, off_norm: f64 },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
