use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),

    #[error("invalid point: {0}")]
    InvalidPoint(String),

    #[error("expected {expected} points, got {got}")]
    WrongSetSize { expected: usize, got: usize },

    #[error("invalid hypergraph: {0}")]
    InvalidHypergraph(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("duplicate line: {0}")]
    DuplicateLine(String),

    #[error("colouring is not total: no colour for {0}")]
    PartialColouring(String),

    #[error("size guard exceeded: {0}")]
    SizeGuard(String),

    #[error("embedding collision: {0} and {1} have the same image")]
    Collision(String, String),

    #[error("not certified: {0}")]
    NotCertified(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("schema error: {0}")]
    Schema(String),
}

pub type Result<T> = std::result::Result<T, Error>;
