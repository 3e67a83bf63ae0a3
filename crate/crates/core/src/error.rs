//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by any stage of the pipeline.
#[derive(Debug, Error)]
pub enum Error {
    /// Transcript contained no usable sentences or tokens.
    #[error("transcript `{id}` is empty")]
    EmptyInput { id: String },

    /// Every token of a transcript was removed by stopword/punctuation
    /// filtering. The transcript is flagged and excluded from modeling.
    #[error("transcript `{id}` has no content tokens after filtering")]
    EmptyAfterFiltering { id: String },

    /// A file did not match its expected format.
    #[error("{path}:{line}: {message}")]
    Format {
        path: String,
        line: usize,
        message: String,
    },

    /// Cosine similarity is undefined for a zero-norm vector.
    #[error("cosine similarity undefined: zero-norm vector")]
    UndefinedSimilarity,

    /// Vectors of mismatched dimensionality.
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    /// A classifier could not be trained on the given data.
    #[error("training failed: {0}")]
    Training(String),

    /// Majority voting over an empty prediction list.
    #[error("majority vote requires at least one prediction")]
    Vote,

    /// A stratified split is infeasible.
    #[error("cannot split: class `{label}` has {count} samples but k = {k}")]
    Split { label: String, count: usize, k: usize },

    /// Invalid run configuration.
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
