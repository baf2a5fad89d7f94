use thiserror::Error;

use crate::graph::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input graph: {0}")]
    Invalid(ValidationReport),
    #[error("unknown edge {0}")]
    UnknownEdge(u64),
    #[error("edges {0} and {1} are not parallel")]
    NotParallel(u64, u64),
    #[error("instance needs at least one vertex")]
    EmptyInstance,
    #[error("orientation contains a directed cycle through {0:?}")]
    Cyclic(Vec<u64>),
    #[error("ordering is not a permutation of the {0} vertices")]
    NotPermutation(usize),
    #[error("rectangles of {0} and {1} lie on the same plane")]
    SamePlane(u64, u64),
    #[error("malformed scene: {0}")]
    Scene(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub(crate) fn internal(msg: impl Into<String>) -> Error {
    Error::Internal(msg.into())
}
