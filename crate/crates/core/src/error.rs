use thiserror::Error;

/// Errors produced by the numerical routines and the harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid geometric set: {0}")]
    InvalidSet(String),

    #[error("unknown corpus entry `{0}`")]
    UnknownCorpusEntry(String),

    #[error("resolution {got} below minimum {min}")]
    ResolutionTooLow { got: usize, min: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("non-finite input: {0}")]
    NonFinite(String),

    #[error("content not evaluable: {0}")]
    NotEvaluable(String),

    #[error("integral diverges: {0}")]
    Divergent(String),

    #[error("grid too coarse: {0}")]
    TooCoarse(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
