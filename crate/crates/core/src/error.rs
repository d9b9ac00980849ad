use thiserror::Error;

/// Errors produced by the core library.
#[derive(Debug, Error)]
pub enum Error {
    /// Invalid configuration: bad bounds, parameters, or inconsistent setup.
    #[error("configuration error: {0}")]
    Config(String),

    /// Mismatch between expected and actual dimensionality.
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    /// An operation is not defined at this dimensionality.
    #[error("unsupported dimension {dim}: {context}")]
    UnsupportedDimension { dim: usize, context: &'static str },

    /// A point lies on the wrong side of the hypervolume reference point.
    #[error(
        "point {index} is on the wrong side of the reference point at coordinate {coordinate}: \
         {value} vs reference {reference}"
    )]
    ReferenceViolation {
        index: usize,
        coordinate: usize,
        value: f64,
        reference: f64,
    },

    /// Invalid input data (empty sets, out-of-range values).
    #[error("{0}")]
    Domain(String),

    /// An exactness or size budget was exceeded.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// Population initialization could not reach `mu` accepted members.
    #[error(
        "initialization failed: {accepted}/{mu} accepted after {attempts} attempts \
         (acceptance rate {rate:.3e})"
    )]
    InitializationFailure {
        accepted: usize,
        mu: usize,
        attempts: usize,
        rate: f64,
    },

    /// A file could not be parsed.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Unsupported file format or format variant.
    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),

    /// I/O failure.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
