use thiserror::Error;

/// Errors raised by the numerical routines and the file readers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("NaN encountered in {0}")]
    NotANumber(&'static str),

    #[error("not a generalized b-metric space: {0:?}")]
    NotABMetric(crate::spaces::BMetricReport),

    #[error("map is not evaluable at {point:?}: {reason}")]
    Evaluation { point: Vec<f64>, reason: String },

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error("overflow after iterate {last_safe_iteration}: {detail}")]
    Overflow {
        last_safe_iteration: usize,
        detail: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
