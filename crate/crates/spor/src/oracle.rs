//! The common adjacency-oracle contract.
//!
//! An oracle represents an implicit subgraph `H` of a fixed input graph. It
//! answers edge queries deterministically in near-constant time, and its
//! answers are frozen at the end of the build: they depend only on the
//! oracle's state and the queried pair, never on query order.

use crate::error::Result;
use crate::graph::{Edge, Graph, NodeId};

pub trait AdjacencyOracle {
    /// Deterministic membership answer for `(u, v)` in the implicit
    /// subgraph. Pairs outside `E(G)` answer NO; out-of-range endpoints are
    /// an error.
    fn query(&self, g: &Graph, u: NodeId, v: NodeId) -> Result<bool>;

    /// Materialize the YES-set by querying every edge of `G`. Costs
    /// `O(m)` queries; this deliberately abandons sublinearity and exists for
    /// verification and export.
    fn enumerate_yes_edges(&self, g: &Graph) -> Result<Vec<Edge>> {
        let mut yes = Vec::new();
        for e in g.edges() {
            if self.query(g, e.u(), e.v())? {
                yes.push(e);
            }
        }
        Ok(yes)
    }
}
