//! Error type shared across the crate.

use std::fmt;

use crate::multiindex::MultiIndex;

/// Errors produced by construction and interpolation routines.
#[derive(Debug)]
pub enum Error {
    /// Two objects that must live in the same ambient dimension do not.
    DimensionMismatch { expected: usize, got: usize },
    /// A degree norm `p < 1` was requested.
    InvalidDegreeNorm(f64),
    /// Building the multi-index set would exceed the configured cardinality cap.
    CardinalityCapExceeded { cap: usize },
    /// A raw index list does not form a valid complete, strictly sorted set.
    InvalidIndexSet(String),
    /// Generating nodes contain duplicate values within one dimension.
    DuplicateNodes { dim: usize },
    /// A 1D node sequence contains duplicate values.
    DuplicateValues,
    /// Generating nodes do not cover the degrees required by the index set.
    InsufficientNodes {
        dim: usize,
        needed: usize,
        got: usize,
    },
    /// A value or coefficient vector has the wrong length.
    SizeMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    /// The given node set is numerically singular for the polynomial space.
    NotUnisolvent { cond_estimate: f64 },
    /// A triangular or LU solve hit a zero pivot.
    SingularMatrix,
    /// No derivative bound was supplied for an outer-boundary index.
    MissingDerivativeBound(MultiIndex),
    /// An operation requiring sample points received none.
    EmptySamples,
    /// The input node set carries no usable rank (empty or fully degenerate).
    DegenerateInput,
    /// Rate fitting needs at least four usable records in range.
    RateFitUnderdetermined { usable: usize },
    /// An input sequence was empty where at least one element is required.
    EmptyInput,
    /// File input/output failure.
    Io(std::io::Error),
    /// JSON (de)serialization failure.
    Json(serde_json::Error),
    /// CSV (de)serialization failure.
    Csv(csv::Error),
    /// Malformed file contents (wrong columns, bad numbers, schema mismatch).
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Self::InvalidDegreeNorm(p) => write!(f, "invalid degree norm p = {p}; need p >= 1"),
            Self::CardinalityCapExceeded { cap } => {
                write!(f, "multi-index set exceeds the cardinality cap of {cap}")
            }
            Self::InvalidIndexSet(reason) => write!(f, "invalid multi-index set: {reason}"),
            Self::DuplicateNodes { dim } => {
                write!(f, "duplicate generating nodes in dimension {dim}")
            }
            Self::DuplicateValues => write!(f, "node sequence contains duplicate values"),
            Self::InsufficientNodes { dim, needed, got } => write!(
                f,
                "generating nodes too short in dimension {dim}: need {needed}, got {got}"
            ),
            Self::SizeMismatch {
                what,
                expected,
                got,
            } => write!(f, "{what}: expected length {expected}, got {got}"),
            Self::NotUnisolvent { cond_estimate } => write!(
                f,
                "node set is not numerically unisolvent (condition estimate {cond_estimate:.3e})"
            ),
            Self::SingularMatrix => write!(f, "matrix is numerically singular"),
            Self::MissingDerivativeBound(alpha) => {
                write!(
                    f,
                    "missing derivative bound for outer-boundary index {alpha}"
                )
            }
            Self::EmptySamples => write!(f, "sample point set is empty"),
            Self::DegenerateInput => write!(f, "input nodes are fully degenerate (rank 0)"),
            Self::RateFitUnderdetermined { usable } => write!(
                f,
                "rate fit needs at least 4 usable records in range, found {usable}"
            ),
            Self::EmptyInput => write!(f, "input sequence is empty"),
            Self::Io(e) => write!(f, "i/o error: {e}"),
            Self::Json(e) => write!(f, "json error: {e}"),
            Self::Csv(e) => write!(f, "csv error: {e}"),
            Self::Format(reason) => write!(f, "malformed input: {reason}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Self::Io(e) => Some(e),
            Self::Json(e) => Some(e),
            Self::Csv(e) => Some(e),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Self::Io(e)
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Self::Json(e)
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Self::Csv(e)
    }
}
