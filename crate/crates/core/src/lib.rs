//! Co-occurrence networks of research fields and subfields.
//!
//! The pipeline: parse classified paper records ([`ingest`]), build a
//! weighted co-occurrence [`graph`], optionally sparsify it with the
//! disparity filter ([`backbone`]), score nodes by betweenness and weighted
//! degree ([`centrality`]), find communities with Louvain or Leiden
//! ([`community`]), and summarize everything ([`report`], [`export`]).

pub mod backbone;
pub mod centrality;
pub mod community;
pub mod error;
pub mod export;
pub mod graph;
pub mod ingest;
pub mod report;

pub use error::{Error, Result};
pub use graph::{GraphBuilder, NodeId, WeightedGraph};
