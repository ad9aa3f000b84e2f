use thiserror::Error;

use crate::witness::VerifyReport;

/// Errors produced by the library.
///
/// Invalid certificates are reported through [`VerifyReport`] when the caller
/// asked for a verification; `Error::InvalidWitness` is used when an operation
/// requires a valid witness as input and did not get one.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("invalid graph: {0}")]
    Graph(String),

    #[error("malformed witness: {0}")]
    Structure(String),

    #[error("witness does not certify its graph ({} violating pairs)", .0.violations.len())]
    InvalidWitness(Box<VerifyReport>),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("resource limit reached: {0}")]
    Resource(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
