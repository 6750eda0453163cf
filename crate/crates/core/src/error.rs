use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("permutation {0} contains the pattern 321")]
    Not321Avoiding(String),

    #[error("invalid labelling: {0}")]
    InvalidLabelling(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("not a split permutation graph")]
    NotSplitPermutation,

    #[error("not a symmetric labelled split permutation graph: {0}")]
    NotSymmetric(String),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    /// A constructive claim failed on a concrete instance.
    #[error("falsification: {0}")]
    Falsification(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
