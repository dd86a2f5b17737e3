//! Immutable simple undirected graphs in compressed adjacency form.
//!
//! A [`Graph`] supports the three access modes every oracle build relies on:
//! indexed adjacency lists, degrees, and edge-membership tests. Neighbor
//! lists are sorted, so membership is a binary search — logarithmic in the
//! degree, inside the near-constant per-query budget — without keeping a
//! second hashed copy of the edge set.

mod gen;
mod io;

pub use gen::{gen_complete, gen_disjoint_union, gen_gnp, gen_random_tree, gen_two_cliques_cut_edge};

use crate::error::{Error, Result};
use crate::rng::Rng;

/// Dense node identifier in `[0, n)`.
pub type NodeId = u32;

/// An undirected edge stored canonically with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct Edge {
    u: NodeId,
    v: NodeId,
}

impl Edge {
    /// Canonicalize the endpoint order. Panics on a self-loop; edges come
    /// from validated graphs or generator internals.
    pub fn new(a: NodeId, b: NodeId) -> Edge {
        assert_ne!(a, b, "self-loop");
        Edge {
            u: a.min(b),
            v: a.max(b),
        }
    }

    pub fn u(&self) -> NodeId {
        self.u
    }

    pub fn v(&self) -> NodeId {
        self.v
    }

    pub fn endpoints(&self) -> (NodeId, NodeId) {
        (self.u, self.v)
    }
}

/// An edge that remembers which endpoint it was sampled from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrientedEdge {
    pub from: NodeId,
    pub to: NodeId,
}

impl OrientedEdge {
    pub fn canonical(&self) -> Edge {
        Edge::new(self.from, self.to)
    }
}

/// Immutable undirected simple graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<NodeId>,
}

impl Graph {
    /// Build a graph from an explicit edge list.
    ///
    /// Rejects self-loops, duplicate edges (in either orientation), and
    /// endpoints outside `[0, n)`. Neighbor lists come out sorted.
    pub fn from_edge_list(n: usize, edges: &[(NodeId, NodeId)]) -> Result<Graph> {
        let mut degree = vec![0usize; n];
        for &(a, b) in edges {
            for node in [a, b] {
                if (node as usize) >= n {
                    return Err(Error::EndpointOutOfRange { node, n });
                }
            }
            if a == b {
                return Err(Error::SelfLoop { u: a });
            }
            degree[a as usize] += 1;
            degree[b as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut acc = 0usize;
        offsets.push(0);
        for d in &degree {
            acc += d;
            offsets.push(acc);
        }
        let mut neighbors = vec![0 as NodeId; acc];
        let mut cursor = offsets.clone();
        for &(a, b) in edges {
            neighbors[cursor[a as usize]] = b;
            cursor[a as usize] += 1;
            neighbors[cursor[b as usize]] = a;
            cursor[b as usize] += 1;
        }
        for v in 0..n {
            let list = &mut neighbors[offsets[v]..offsets[v + 1]];
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateEdge {
                    u: (v as NodeId).min(w[0]),
                    v: (v as NodeId).max(w[0]),
                });
            }
        }
        Ok(Graph { offsets, neighbors })
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    pub fn degree(&self, v: NodeId) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Sorted neighbor list of `v`, with constant-time indexed access.
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        let v = v as usize;
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    fn check_node(&self, v: NodeId) -> Result<()> {
        if (v as usize) < self.node_count() {
            Ok(())
        } else {
            Err(Error::EndpointOutOfRange {
                node: v,
                n: self.node_count(),
            })
        }
    }

    /// Edge membership by binary search over the sparser endpoint's list.
    pub fn has_edge(&self, u: NodeId, v: NodeId) -> Result<bool> {
        self.check_node(u)?;
        self.check_node(v)?;
        if u == v {
            return Ok(false);
        }
        let (a, b) = if self.degree(u) <= self.degree(v) {
            (u, v)
        } else {
            (v, u)
        };
        Ok(self.neighbors(a).binary_search(&b).is_ok())
    }

    /// Uniform random incident edge of `v`, oriented away from `v`.
    pub fn sample_incident_edge(&self, v: NodeId, rng: &mut Rng) -> Result<OrientedEdge> {
        self.check_node(v)?;
        let deg = self.degree(v);
        if deg == 0 {
            return Err(Error::IsolatedNode { node: v });
        }
        let w = self.neighbors(v)[rng.index(deg)];
        Ok(OrientedEdge { from: v, to: w })
    }

    /// All edges in canonical `(u, v)` order with `u < v`, sorted.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.node_count() as NodeId {
            for &w in self.neighbors(u) {
                if w > u {
                    out.push(Edge { u, v: w });
                }
            }
        }
        out
    }

    /// Average degree `2m / n`; 0 for the empty node set.
    pub fn average_degree(&self) -> f64 {
        if self.node_count() == 0 {
            0.0
        } else {
            self.neighbors.len() as f64 / self.node_count() as f64
        }
    }

    /// Connected-component label per node, labels dense from 0 in order of
    /// first appearance.
    pub fn component_labels(&self) -> Vec<u32> {
        component_labels_of(self.node_count(), |v| self.neighbors(v).iter().copied())
    }
}

/// BFS component labeling over an arbitrary adjacency closure; shared by the
/// graph itself and by verifiers that work on plain edge subsets.
pub(crate) fn component_labels_of<I, F>(n: usize, mut adj: F) -> Vec<u32>
where
    I: Iterator<Item = NodeId>,
    F: FnMut(NodeId) -> I,
{
    let mut label = vec![u32::MAX; n];
    let mut next = 0u32;
    let mut queue = std::collections::VecDeque::new();
    for start in 0..n as NodeId {
        if label[start as usize] != u32::MAX {
            continue;
        }
        label[start as usize] = next;
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            for w in adj(v) {
                if label[w as usize] == u32::MAX {
                    label[w as usize] = next;
                    queue.push_back(w);
                }
            }
        }
        next += 1;
    }
    label
}

pub use io::{read_graph, read_text, write_binary, write_text};
