//! Instance generators: benchmark families and the adversarial constructions
//! used by the verification suite.

use super::{Edge, Graph, NodeId};
use crate::error::{Error, Result};
use crate::rng::Rng;

/// Complete graph on `n` nodes.
pub fn gen_complete(n: usize) -> Result<Graph> {
    let mut edges = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
    for u in 0..n as NodeId {
        for v in (u + 1)..n as NodeId {
            edges.push((u, v));
        }
    }
    Graph::from_edge_list(n, &edges)
}

/// Erdős–Rényi G(n, p): each pair independently with probability `p`.
pub fn gen_gnp(n: usize, p: f64, rng: &mut Rng) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::BadParameter(format!("gnp probability {p} not in [0, 1]")));
    }
    let mut edges = Vec::new();
    for u in 0..n as NodeId {
        for v in (u + 1)..n as NodeId {
            if rng.chance(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edge_list(n, &edges)
}

/// Uniform random labeled tree via random attachment: node `i` joins a
/// uniform earlier node. Connected, `n - 1` edges.
pub fn gen_random_tree(n: usize, rng: &mut Rng) -> Result<Graph> {
    if n == 0 {
        return Err(Error::BadSize {
            reason: "tree needs at least one node".into(),
        });
    }
    let mut edges = Vec::with_capacity(n - 1);
    for v in 1..n as NodeId {
        let parent = rng.index(v as usize) as NodeId;
        edges.push((parent, v));
    }
    Graph::from_edge_list(n, &edges)
}

/// Two disjoint `n/2`-cliques joined by one uniformly random cut edge, over a
/// uniformly random partition of the nodes. Returns the graph and the hidden
/// cut edge for test introspection.
pub fn gen_two_cliques_cut_edge(n: usize, rng: &mut Rng) -> Result<(Graph, Edge)> {
    if n < 4 || n % 2 != 0 {
        return Err(Error::BadSize {
            reason: format!("two-cliques instance needs even n >= 4, got {n}"),
        });
    }
    let mut perm: Vec<NodeId> = (0..n as NodeId).collect();
    rng.shuffle(&mut perm);
    let (left, right) = perm.split_at(n / 2);
    let mut edges = Vec::with_capacity(2 * (n / 2) * (n / 2 - 1) / 2 + 1);
    for side in [left, right] {
        for i in 0..side.len() {
            for j in (i + 1)..side.len() {
                edges.push((side[i], side[j]));
            }
        }
    }
    let cut = Edge::new(left[rng.index(left.len())], right[rng.index(right.len())]);
    edges.push(cut.endpoints());
    Ok((Graph::from_edge_list(n, &edges)?, cut))
}

/// Disjoint union; part `i`'s node ids are offset by the sizes of parts
/// `0..i`.
pub fn gen_disjoint_union(parts: &[Graph]) -> Result<Graph> {
    let n: usize = parts.iter().map(|g| g.node_count()).sum();
    let mut edges = Vec::with_capacity(parts.iter().map(|g| g.edge_count()).sum());
    let mut offset = 0 as NodeId;
    for g in parts {
        for e in g.edges() {
            edges.push((e.u() + offset, e.v() + offset));
        }
        offset += g.node_count() as NodeId;
    }
    Graph::from_edge_list(n, &edges)
}
