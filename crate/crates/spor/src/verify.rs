//! Independent brute-force verifiers for every oracle guarantee, plus the
//! classical iterated-spanning-forest certificate as a size baseline.
//!
//! Everything here recomputes from first principles (BFS partitions,
//! unit-capacity max-flow, truncated BFS distances) and never touches the
//! oracle code paths it checks.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{component_labels_of, Edge, Graph, NodeId};

/// Outcome of one verification run; `pass` holds exactly when `witnesses`
/// is empty.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub property: String,
    pub pass: bool,
    pub witnesses: Vec<Witness>,
    pub counts: ReportCounts,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A G-edge whose endpoints the checked subgraph fails to serve
    /// (disconnected or over-stretched).
    Edge { u: NodeId, v: NodeId },
    /// A node pair whose local connectivity in H falls below the target.
    Pair {
        s: NodeId,
        t: NodeId,
        lambda_g: usize,
        lambda_h: usize,
    },
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct ReportCounts {
    pub h_edges: usize,
    pub g_components: usize,
    pub h_components: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_stretch_observed: Option<usize>,
}

fn adjacency(n: usize, edges: &[Edge]) -> Vec<Vec<NodeId>> {
    let mut adj = vec![Vec::new(); n];
    for e in edges {
        adj[e.u() as usize].push(e.v());
        adj[e.v() as usize].push(e.u());
    }
    adj
}

fn require_subset(h_edges: &[Edge], g: &Graph) -> Result<()> {
    for e in h_edges {
        if !g.has_edge(e.u(), e.v())? {
            return Err(Error::EdgeNotInG { u: e.u(), v: e.v() });
        }
    }
    Ok(())
}

/// Does H have the same connected components as G? Witnesses are G-edges
/// joining distinct H-components.
pub fn check_spanning(h_edges: &[Edge], g: &Graph) -> Result<VerificationReport> {
    require_subset(h_edges, g)?;
    let n = g.node_count();
    let adj = adjacency(n, h_edges);
    let h_labels = component_labels_of(n, |v| adj[v as usize].iter().copied());
    let g_labels = g.component_labels();
    let mut witnesses = Vec::new();
    for e in g.edges() {
        if h_labels[e.u() as usize] != h_labels[e.v() as usize] {
            witnesses.push(Witness::Edge { u: e.u(), v: e.v() });
        }
    }
    let counts = ReportCounts {
        h_edges: h_edges.len(),
        g_components: g_labels.iter().max().map_or(0, |&m| m as usize + 1),
        h_components: h_labels.iter().max().map_or(0, |&m| m as usize + 1),
        max_stretch_observed: None,
    };
    Ok(VerificationReport {
        property: "spanning".into(),
        pass: witnesses.is_empty(),
        witnesses,
        counts,
    })
}

/// Local edge connectivity `min(cap, λ(s, t))` by unit-capacity augmenting
/// paths. Each undirected edge is a pair of opposed residual arcs.
pub fn local_edge_connectivity(
    n: usize,
    adj: &[Vec<NodeId>],
    s: NodeId,
    t: NodeId,
    cap: usize,
) -> usize {
    // rev_index[v][p] locates the reverse arc of v's p-th adjacency entry in
    // the far endpoint's list. Simple graphs: the match is unique.
    let mut rev_index: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        for &w in &adj[v] {
            let pos = adj[w as usize]
                .iter()
                .position(|&x| x == v as NodeId)
                .expect("asymmetric adjacency");
            rev_index[v].push(pos);
        }
    }
    let mut residual: Vec<Vec<u8>> = adj.iter().map(|l| vec![1; l.len()]).collect();
    let mut flow = 0;
    while flow < cap {
        // BFS for an augmenting path in the residual graph.
        let mut parent: Vec<Option<(NodeId, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        seen[s as usize] = true;
        queue.push_back(s);
        'bfs: while let Some(v) = queue.pop_front() {
            for (p, &w) in adj[v as usize].iter().enumerate() {
                if residual[v as usize][p] == 0 || seen[w as usize] {
                    continue;
                }
                seen[w as usize] = true;
                parent[w as usize] = Some((v, p));
                if w == t {
                    break 'bfs;
                }
                queue.push_back(w);
            }
        }
        if !seen[t as usize] {
            break;
        }
        let mut v = t;
        while v != s {
            let (u, p) = parent[v as usize].unwrap();
            residual[u as usize][p] = 0;
            residual[v as usize][rev_index[u as usize][p]] = 1;
            v = u;
        }
        flow += 1;
    }
    flow
}

/// All-pairs certificate check: for every pair, `λ_H(s,t) >= min(k, λ_G(s,t))`
/// with connectivities capped at `k` (sufficient for the comparison).
pub fn check_k_certificate(h_edges: &[Edge], g: &Graph, k: usize) -> Result<VerificationReport> {
    require_subset(h_edges, g)?;
    let n = g.node_count();
    let g_adj = adjacency(n, &g.edges());
    let h_adj = adjacency(n, h_edges);
    let mut witnesses = Vec::new();
    for s in 0..n as NodeId {
        for t in (s + 1)..n as NodeId {
            let lambda_g = local_edge_connectivity(n, &g_adj, s, t, k);
            if lambda_g == 0 {
                continue;
            }
            let lambda_h = local_edge_connectivity(n, &h_adj, s, t, lambda_g);
            if lambda_h < lambda_g {
                witnesses.push(Witness::Pair {
                    s,
                    t,
                    lambda_g,
                    lambda_h,
                });
            }
        }
    }
    let counts = ReportCounts {
        h_edges: h_edges.len(),
        ..ReportCounts::default()
    };
    Ok(VerificationReport {
        property: format!("{k}-connectivity-certificate"),
        pass: witnesses.is_empty(),
        witnesses,
        counts,
    })
}

/// Per-edge stretch check: every G-edge's endpoints must lie within distance
/// `t` in H. One truncated BFS per distinct left endpoint covers all its
/// edges; by the standard reduction this certifies the full t-spanner
/// property. Pass `usize::MAX` for an unbounded-depth connectivity check.
pub fn check_stretch(h_edges: &[Edge], g: &Graph, t: usize) -> Result<VerificationReport> {
    require_subset(h_edges, g)?;
    let n = g.node_count();
    let h_adj = adjacency(n, h_edges);
    let mut witnesses = Vec::new();
    let mut max_observed = 0usize;
    let mut dist = vec![usize::MAX; n];
    let mut touched: Vec<NodeId> = Vec::new();
    for u in 0..n as NodeId {
        let targets: Vec<NodeId> = g.neighbors(u).iter().copied().filter(|&w| w > u).collect();
        if targets.is_empty() {
            continue;
        }
        // BFS from u in H, truncated at depth t.
        dist[u as usize] = 0;
        touched.push(u);
        let mut queue = VecDeque::new();
        queue.push_back(u);
        while let Some(v) = queue.pop_front() {
            let d = dist[v as usize];
            if d >= t {
                break;
            }
            for &w in &h_adj[v as usize] {
                if dist[w as usize] == usize::MAX {
                    dist[w as usize] = d + 1;
                    touched.push(w);
                    queue.push_back(w);
                }
            }
        }
        for &w in &targets {
            let d = dist[w as usize];
            if d == usize::MAX {
                witnesses.push(Witness::Edge { u, v: w });
            } else {
                max_observed = max_observed.max(d);
            }
        }
        for &v in &touched {
            dist[v as usize] = usize::MAX;
        }
        touched.clear();
    }
    let counts = ReportCounts {
        h_edges: h_edges.len(),
        max_stretch_observed: Some(max_observed),
        ..ReportCounts::default()
    };
    Ok(VerificationReport {
        property: if t == usize::MAX {
            "stretch-unbounded".into()
        } else {
            format!("stretch-{t}")
        },
        pass: witnesses.is_empty(),
        witnesses,
        counts,
    })
}

/// Classical certificate baseline: k rounds of "take a spanning forest, then
/// delete its edges". At most `k (n - 1)` edges, always a valid
/// k-connectivity certificate.
pub fn baseline_sparse_certificate(g: &Graph, k: usize) -> Vec<Edge> {
    let n = g.node_count();
    let mut removed: HashSet<Edge> = HashSet::new();
    let mut out = Vec::new();
    for _ in 0..k {
        // BFS spanning forest of G minus the removed edges.
        let mut seen = vec![false; n];
        let mut forest = Vec::new();
        for start in 0..n as NodeId {
            if seen[start as usize] {
                continue;
            }
            seen[start as usize] = true;
            let mut queue = VecDeque::new();
            queue.push_back(start);
            while let Some(v) = queue.pop_front() {
                for &w in g.neighbors(v) {
                    if seen[w as usize] || removed.contains(&Edge::new(v, w)) {
                        continue;
                    }
                    seen[w as usize] = true;
                    forest.push(Edge::new(v, w));
                    queue.push_back(w);
                }
            }
        }
        if forest.is_empty() {
            break;
        }
        removed.extend(forest.iter().copied());
        out.extend(forest);
    }
    out.sort_unstable();
    out
}
