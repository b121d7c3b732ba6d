use thiserror::Error;

use crate::graph::{EdgeId, VertexId};

/// Every failure the library can report.
///
/// Ingestion and precondition errors are ordinary user-facing failures.
/// `Internal` marks a state that a correct construction can never reach;
/// seeing one means a bug (or an input that violated an unchecked
/// precondition).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("graph is empty")]
    Empty,
    #[error("graph is not cubic: vertex {vertex} has degree {degree}")]
    NotCubic { vertex: VertexId, degree: usize },
    #[error("graph has a bridge: edge {edge} ({u}, {v})")]
    Bridge { edge: EdgeId, u: VertexId, v: VertexId },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("edge {0} is not present in the current graph")]
    UnknownEdge(EdgeId),
    #[error("vertex {0} is not present in the current graph")]
    UnknownVertex(VertexId),
    #[error("no contraction named `{0}`")]
    UnknownContraction(String),
    #[error("contraction `{requested}` is not the most recent one (`{top}` is)")]
    ContractionOrder { requested: String, top: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("search cap exceeded: {0}")]
    CapExceeded(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! internal {
    ($($arg:tt)*) => {
        $crate::error::Error::Internal(format!($($arg)*))
    };
}

macro_rules! precondition {
    ($($arg:tt)*) => {
        $crate::error::Error::Precondition(format!($($arg)*))
    };
}

pub(crate) use internal;
pub(crate) use precondition;
