use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Requested generation is above the configured generation cap.
    #[error("generation {generation} exceeds the configured cap of {cap}")]
    Capacity { generation: u32, cap: u32 },

    /// An argument lies outside the domain of the operation.
    #[error("{0}")]
    Domain(String),

    /// The eigensolver did not converge.
    #[error("eigendecomposition of an order-{order} matrix failed to converge")]
    Numeric { order: usize },

    /// Malformed input file.
    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
