use thiserror::Error;

/// Errors raised by the algebra, operator and constructor layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("component count mismatch: {left} vs {right}")]
    ComponentMismatch { left: usize, right: usize },

    #[error("component {component} out of range for a space with {s} components")]
    ComponentOutOfRange { component: usize, s: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("Pfaffian requires an even dimension, got {0}")]
    OddDimension(usize),

    #[error("matrix is not skew-symmetric at entry ({0}, {1})")]
    NotSkew(usize, usize),

    #[error("variable p_{index} has even index; only odd power sums are allowed here")]
    EvenVariable { index: u32 },

    #[error("partition {0:?} is not strictly decreasing")]
    NotStrict(Vec<u32>),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for shape/type violations as opposed to bad user data.
    pub fn is_structural(&self) -> bool {
        !matches!(self, Error::InvalidInput(_) | Error::Parse(_))
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
