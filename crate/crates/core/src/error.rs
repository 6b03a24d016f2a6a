use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

/// Coarse classification used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    Capacity,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph order {0} exceeds the capacity of {max} vertices", max = crate::MAX_ORDER)]
    OrderTooLarge(usize),
    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("edge {0}-{1} is not present in the graph")]
    MissingEdge(usize, usize),
    #[error("pattern needs {needed} vertices but the ambient graph has only {n}")]
    Infeasible { needed: usize, n: usize },
    #[error("{what}: requested {requested}, limit {limit}")]
    Capacity {
        what: &'static str,
        requested: usize,
        limit: usize,
    },
    #[error("domain error: {0}")]
    Domain(&'static str),
    #[error("oracle `{oracle}` does not apply: {reason}")]
    OracleMismatch { oracle: &'static str, reason: &'static str },
    #[error("mismatched inputs: {0}")]
    Mismatch(&'static str),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::OrderTooLarge(_) | Error::Capacity { .. } => ErrorKind::Capacity,
            _ => ErrorKind::Input,
        }
    }
}
