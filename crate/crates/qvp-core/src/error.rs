//! Error types shared by the simulator, the classifiers, and the training harness.

use thiserror::Error;

/// Crate-wide error type.
///
/// Ingestion failures keep distinct variants so callers can tell a missing
/// file from a malformed row or a bad class selection.
#[derive(Debug, Error)]
pub enum Error {
    /// A resource limit or construction-time configuration was violated.
    #[error("configuration error: {0}")]
    Config(String),

    /// An operation received an argument outside its domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A feature vector could not be mapped onto statevector amplitudes.
    #[error("encoding error: {0}")]
    Encoding(String),

    /// File access failed.
    #[error("failed to access {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    /// A data row could not be parsed.
    #[error("malformed row at line {line}: {reason}")]
    MalformedRow { line: usize, reason: String },

    /// A requested class name does not occur in the data.
    #[error("unknown class name: {0:?}")]
    UnknownClass(String),

    /// The selected rows do not form a usable two-class dataset.
    #[error("dataset error: {0}")]
    Dataset(String),

    /// A feature column carries no information (max == min).
    #[error("degenerate feature column: {0}")]
    DegenerateFeature(String),

    /// Training produced a non-finite quantity and was aborted.
    #[error("numerical error: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
