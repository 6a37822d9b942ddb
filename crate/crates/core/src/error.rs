use thiserror::Error;

use crate::graph::Vertex;

/// Errors raised by graph construction, parsing and the algorithms built on top.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("vertex {vertex} out of range for part size {n}")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("vertices {0} and {1} lie in the same part")]
    SamePart(Vertex, Vertex),
    #[error("{0} and {1} are not adjacent")]
    NotAnEdge(Vertex, Vertex),
    #[error("part size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("bound violated: {0}")]
    BoundViolation(String),
    #[error("io: {0}")]
    Io(String),
}

impl Error {
    /// Short machine-readable code used by the command-line front end.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidParameter(_) => "invalid-parameter",
            Error::VertexOutOfRange { .. } => "vertex-out-of-range",
            Error::SamePart(..) => "same-part",
            Error::NotAnEdge(..) => "not-an-edge",
            Error::SizeMismatch(..) => "size-mismatch",
            Error::Malformed(_) => "malformed",
            Error::Precondition(_) => "precondition",
            Error::BoundViolation(_) => "bound-violation",
            Error::Io(_) => "io",
        }
    }
}

impl Error {
    /// The message without the category prefix of `Display`.
    pub fn message(&self) -> String {
        match self {
            Error::InvalidParameter(m)
            | Error::Malformed(m)
            | Error::Precondition(m)
            | Error::BoundViolation(m)
            | Error::Io(m) => m.clone(),
            other => other.to_string(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
