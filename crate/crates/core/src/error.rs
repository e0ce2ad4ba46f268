use thiserror::Error;

/// Errors raised by the algebra kernel and the automorphism layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected}, found {found}")]
    Arity { expected: usize, found: usize },

    #[error("shape error: {0}")]
    Shape(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),

    #[error("not an invariant hypersurface: {0}")]
    NotInvariant(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A statement that holds for every certified automorphism was violated.
    #[error("integrity failure: {0}")]
    Integrity(String),

    /// An error raised inside a named stage of a larger computation.
    #[error("{stage}: {source}")]
    Stage { stage: String, source: Box<Error> },
}

impl Error {
    pub fn in_stage(self, stage: &str) -> Error {
        Error::Stage { stage: stage.to_string(), source: Box::new(self) }
    }

    /// The innermost error, with stage wrappers removed.
    pub fn root(&self) -> &Error {
        match self {
            Error::Stage { source, .. } => source.root(),
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
