use thiserror::Error;

use crate::graph::NodeId;

/// Errors shared across graph construction, oracle builds, and verification.
#[derive(Debug, Error)]
pub enum Error {
    #[error("self-loop ({u}, {u}) is not allowed in a simple graph")]
    SelfLoop { u: NodeId },

    #[error("duplicate edge ({u}, {v})")]
    DuplicateEdge { u: NodeId, v: NodeId },

    #[error("endpoint {node} out of range for graph on {n} nodes")]
    EndpointOutOfRange { node: NodeId, n: usize },

    #[error("node {node} has no incident edges")]
    IsolatedNode { node: NodeId },

    #[error("bad size for generator: {reason}")]
    BadSize { reason: String },

    #[error("node {node} is not present in the sampler")]
    NodeAbsent { node: NodeId },

    /// The rejection sampler exceeded its retry cap. This signals a broken
    /// invariant (stale group contents or corrupted degree sums), not a legal
    /// outcome of the sampling scheme.
    #[error("edge sampler exceeded {attempts} attempts for bucket {bucket}")]
    SamplerStuck { bucket: u32, attempts: u32 },

    #[error("edge ({u}, {v}) is not an edge of the input graph")]
    EdgeNotInG { u: NodeId, v: NodeId },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
