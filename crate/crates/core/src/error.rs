use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("loop not allowed at vertex {0}")]
    Loop(usize),

    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("size mismatch: expected {expected}, got {actual}")]
    SizeMismatch { expected: usize, actual: usize },

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("not an automorphism: {0}")]
    NotAnAutomorphism(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("invalid trail: {0}")]
    InvalidTrail(String),

    #[error("resource cap exceeded: {0}")]
    CapExceeded(String),

    /// A property that should hold by construction was observed to fail.
    #[error("property falsified: {0}")]
    Falsified(String),
}

impl Error {
    pub(crate) fn malformed(msg: impl Into<String>) -> Self {
        Error::Malformed(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    /// True for errors caused by bad user input rather than resource limits or
    /// falsified properties.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::CapExceeded(_) | Error::Falsified(_))
    }
}
