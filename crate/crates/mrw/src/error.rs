//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A price was zero, negative, or otherwise outside the model domain.
    #[error("invalid price at row {row}: {value} (prices must be finite and > 0)")]
    InvalidPrice { row: usize, value: f64 },

    /// Not enough observations for the requested operation.
    #[error("series too short: need at least {needed} points, got {got}")]
    SeriesTooShort { needed: usize, got: usize },

    /// A parameter failed validation.
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParam { name: &'static str, reason: String },

    /// A rolling window does not fit inside the series.
    #[error("window of {length} returns does not fit in a series of {available}")]
    WindowTooLong { length: usize, available: usize },

    /// Input data carries no usable signal (constant, all-zero, ...).
    #[error("degenerate data: {0}")]
    Degenerate(String),

    /// A fit or estimator could not produce a finite result.
    #[error("estimation failed: {0}")]
    Estimation(String),

    /// Identifies which pipeline stage of a composite operation failed.
    #[error("{stage} stage failed: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    /// Identifies the failing simulation inside an ensemble.
    #[error("simulation with seed {seed} failed: {source}")]
    Seed {
        seed: u64,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn invalid_param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParam {
            name,
            reason: reason.into(),
        }
    }

    /// Wrap an error with the pipeline stage it occurred in.
    pub fn in_stage(self, stage: &'static str) -> Self {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }

    /// Wrap an error with the ensemble seed that produced it.
    pub fn for_seed(self, seed: u64) -> Self {
        Error::Seed {
            seed,
            source: Box::new(self),
        }
    }
}
