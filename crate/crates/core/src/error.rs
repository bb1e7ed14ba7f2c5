use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument outside the documented range.
    #[error("parameter error: {0}")]
    Parameter(String),

    /// A value outside the domain of a function (negative sqrt, ln of a non-positive number, ...).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("indeterminate sign divisor")]
    IndeterminateDivisor,

    /// A certified enclosure was too wide to decide the requested fact.
    /// `needed_scale` is a hint for the caller's retry, when one is known.
    #[error("insufficient precision: {what}")]
    InsufficientPrecision {
        what: String,
        needed_scale: Option<u32>,
    },

    #[error("rank error: basis vectors are linearly dependent")]
    Rank,

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Serialize {
        path: PathBuf,
        #[source]
        source: Box<dyn std::error::Error + Send + Sync>,
    },
}

impl Error {
    pub(crate) fn precision(what: impl Into<String>) -> Self {
        Error::InsufficientPrecision {
            what: what.into(),
            needed_scale: None,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for errors that a retry at higher precision may fix.
    pub fn is_precision(&self) -> bool {
        matches!(self, Error::InsufficientPrecision { .. })
    }
}
