use thiserror::Error;

use crate::rational::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("coordinate {index} is beyond the truncation depth {depth}")]
    OutOfDepth { index: usize, depth: usize },

    #[error("operation requires an eventually periodic stream")]
    NotPeriodic,

    #[error("truncated streams have different depths ({left} vs {right})")]
    DepthMismatch { left: usize, right: usize },

    #[error("map is not strictly monotone: {0}")]
    NotMonotone(String),

    #[error("map has no entry for value {0}")]
    MissingValue(Rational),

    #[error("invalid stream: {0}")]
    InvalidStream(String),

    #[error("invalid pairing function: {0}")]
    InvalidPairing(String),

    #[error("invalid utility domain: {0}")]
    InvalidDomain(String),

    #[error("coordinate {index} has value {value}, which is outside the utility domain")]
    DomainViolation { index: usize, value: Rational },

    #[error("utility domain is unbounded")]
    UnboundedDomain,

    #[error("rho must lie strictly between 0 and 1, got {0}")]
    BadRho(Rational),

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("brute-force search is limited to {max} coordinates, got {n}")]
    SizeLimit { n: usize, max: usize },

    #[error("depth {depth} is too small; at least {needed} is required")]
    DepthTooSmall { needed: usize, depth: usize },

    #[error("unknown construction {0:?}")]
    UnknownName(String),

    #[error("generator: {0}")]
    Generator(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Errors that come from the finite representation rather than from
    /// bad input: asking a truncation for coordinates it does not have.
    pub fn is_representation_limit(&self) -> bool {
        matches!(self, Error::OutOfDepth { .. } | Error::DepthTooSmall { .. })
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
