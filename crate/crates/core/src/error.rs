use thiserror::Error;

/// Errors for inputs that an operation refuses to work on.
///
/// Failed mathematical checks are never errors; they are entries in the
/// corresponding report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),

    #[error("unknown edge {0:?}")]
    UnknownEdge(String),

    #[error("map is not total: {0}")]
    NotTotal(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("not a quiver morphism: {0}")]
    NotAMorphism(String),

    #[error("morphism is not regular: {0}")]
    NotRegular(String),

    #[error("composition mismatch: codomain of the first map is not the domain of the second")]
    CompositionMismatch,

    #[error("weighted quiver where counting measures are required: {0}")]
    NotCounting(String),

    #[error("outside deg-≤2 fragment: {0}")]
    OutsideFragment(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal error: {0}")]
    Internal(String),
}
