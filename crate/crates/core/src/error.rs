use thiserror::Error;

/// Errors raised by the polytope kernel, the credal layer and the file codecs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("the constraint system has no solution")]
    Empty,

    #[error("the constraint system describes an unbounded set")]
    Unbounded,

    #[error("a vertex set needs at least one point")]
    NoPoints,

    #[error("scope mismatch: {0}")]
    ScopeMismatch(String),

    #[error("scopes overlap on {0:?}")]
    ScopesOverlap(Vec<String>),

    #[error("first marginal is not absolutely continuous with respect to the second")]
    NotAbsolutelyContinuous,

    #[error("no member of the credal set has the requested marginal")]
    EmptyFiber,

    #[error("invalid distribution (row {row}): {reason}")]
    InvariantViolation { row: usize, reason: String },

    #[error("parse error at {location}: {reason}")]
    Parse { location: String, reason: String },
}

impl Error {
    /// Stable short code used by the command line front end.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "dimension-mismatch",
            Error::Empty => "empty",
            Error::Unbounded => "unbounded",
            Error::NoPoints => "no-points",
            Error::ScopeMismatch(_) => "scope-mismatch",
            Error::ScopesOverlap(_) => "scopes-overlap",
            Error::NotAbsolutelyContinuous => "not-absolutely-continuous",
            Error::EmptyFiber => "empty-fiber",
            Error::InvariantViolation { .. } => "invariant-violation",
            Error::Parse { .. } => "parse",
        }
    }

    pub(crate) fn parse(location: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            reason: reason.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
