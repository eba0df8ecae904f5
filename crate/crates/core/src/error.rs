use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("time {t} outside the horizon [0, {horizon}]")]
    Domain { t: f64, horizon: f64 },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("size limit exceeded: {0}")]
    Size(String),

    #[error("invalid spanning tree: {0}")]
    InvalidTree(String),

    #[error("invalid slide: {0}")]
    InvalidSlide(String),

    #[error("invalid rotation: {0}")]
    InvalidRotation(String),

    #[error("audit failed: {0}")]
    Audit(String),

    #[error("scenario format: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn param(msg: impl Into<String>) -> Error {
    Error::Parameter(msg.into())
}
