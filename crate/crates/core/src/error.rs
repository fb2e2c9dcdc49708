use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("node label must not be empty")]
    EmptyLabel,

    #[error("self-loop on node {0:?} is not allowed")]
    SelfLoop(String),

    #[error("unknown node: {0}")]
    UnknownNode(String),

    #[error("edge weight must be positive and finite, got {0}")]
    InvalidWeight(f64),

    #[error("no edge between {0:?} and {1:?}")]
    MissingEdge(String, String),

    #[error("density is undefined for graphs with fewer than 2 nodes (n = {0})")]
    TooFewNodes(usize),

    #[error("graph has no edges")]
    EmptyGraph,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("partition does not match graph: {0}")]
    PartitionMismatch(String),

    #[error("node sets differ: {0}")]
    NodeSetMismatch(String),

    #[error("taxonomy: {0}")]
    Taxonomy(String),

    #[error("row {row}: {reason}")]
    MalformedRow { row: u64, reason: String },

    #[error("duplicate edge {0:?} -- {1:?}")]
    DuplicateEdge(String, String),

    #[error("missing attribute for node {0:?}: {1}")]
    MissingAttribute(String, &'static str),

    #[error("no records to process")]
    NoRecords,

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    /// True for failures of the underlying stream rather than of its content.
    pub fn is_io(&self) -> bool {
        match self {
            Error::Io(_) => true,
            Error::Csv(e) => matches!(e.kind(), csv::ErrorKind::Io(_)),
            _ => false,
        }
    }
}
