//! Center sampling and cluster assignment shared by the 3- and 5-spanner
//! oracles. The two preprocessing phases are identical up to the recording
//! rule, which stays in the respective oracle modules.

use crate::graph::{Edge, Graph, NodeId};
use crate::rng::Rng;

/// Cluster-center assignments plus the recorded center-assignment edges.
#[derive(Debug, Clone)]
pub struct ClusterState {
    /// The cluster a node belongs to, identified by its center; centers map
    /// to themselves.
    pub center: Vec<Option<NodeId>>,
    pub is_center: Vec<bool>,
    /// One recorded edge per non-center clustered node, to its center.
    pub assignment_edges: Vec<Edge>,
}

impl ClusterState {
    pub fn center_count(&self) -> usize {
        self.is_center.iter().filter(|&&c| c).count()
    }

    pub fn clustered_count(&self) -> usize {
        self.center.iter().filter(|c| c.is_some()).count()
    }
}

pub(crate) struct ClusterConfig {
    /// Independent center-selection probability (clamped to [0, 1]).
    pub center_probability: f64,
    /// True: scan each center's adjacency list and claim unassigned
    /// neighbors. False: each node probes random neighbors for a center.
    pub center_scan: bool,
    /// Probe budget per node in the random-probe branch; at or above the
    /// node's degree the full list is scanned once instead.
    pub probe_cap: usize,
}

pub(crate) fn assign_clusters(g: &Graph, cfg: &ClusterConfig, rng: &mut Rng) -> ClusterState {
    let n = g.node_count();
    let mut state = ClusterState {
        center: vec![None; n],
        is_center: vec![false; n],
        assignment_edges: Vec::new(),
    };
    for v in 0..n as NodeId {
        if rng.chance(cfg.center_probability) {
            state.is_center[v as usize] = true;
            state.center[v as usize] = Some(v);
        }
    }
    if cfg.center_scan {
        // Centers claim unassigned neighbors in id order; first wins.
        for c in 0..n as NodeId {
            if !state.is_center[c as usize] {
                continue;
            }
            for &w in g.neighbors(c) {
                if state.center[w as usize].is_none() {
                    state.center[w as usize] = Some(c);
                    state.assignment_edges.push(Edge::new(c, w));
                }
            }
        }
    } else {
        for v in 0..n as NodeId {
            if state.center[v as usize].is_some() || g.degree(v) == 0 {
                continue;
            }
            let deg = g.degree(v);
            let found = if cfg.probe_cap >= deg {
                g.neighbors(v)
                    .iter()
                    .copied()
                    .find(|&w| state.is_center[w as usize])
            } else {
                let mut hit = None;
                for _ in 0..cfg.probe_cap {
                    let w = g.neighbors(v)[rng.index(deg)];
                    if state.is_center[w as usize] {
                        hit = Some(w);
                        break;
                    }
                }
                hit
            };
            if let Some(c) = found {
                state.center[v as usize] = Some(c);
                state.assignment_edges.push(Edge::new(c, v));
            }
        }
    }
    state
}

/// Visit `budget` uniformly sampled incident edges of `v` (with
/// replacement), or the whole neighbor list once when the budget covers it.
/// Returning `false` from the visitor stops early.
pub(crate) fn visit_sampled_neighbors(
    g: &Graph,
    v: NodeId,
    budget: usize,
    rng: &mut Rng,
    mut visit: impl FnMut(NodeId) -> bool,
) {
    let deg = g.degree(v);
    if deg == 0 {
        return;
    }
    if budget >= deg {
        for &w in g.neighbors(v) {
            if !visit(w) {
                return;
            }
        }
    } else {
        for _ in 0..budget {
            if !visit(g.neighbors(v)[rng.index(deg)]) {
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::gen_complete;

    #[test]
    fn centers_belong_to_their_own_cluster() {
        let g = gen_complete(50).unwrap();
        let cfg = ClusterConfig {
            center_probability: 0.3,
            center_scan: true,
            probe_cap: 0,
        };
        let state = assign_clusters(&g, &cfg, &mut Rng::new(2));
        for v in 0..50 {
            if state.is_center[v] {
                assert_eq!(state.center[v], Some(v as NodeId));
            }
        }
        assert!(state.center_count() > 0);
    }

    #[test]
    fn assignment_edges_link_members_to_their_centers() {
        let g = gen_complete(30).unwrap();
        for scan in [true, false] {
            let cfg = ClusterConfig {
                center_probability: 0.2,
                center_scan: scan,
                probe_cap: 64,
            };
            let state = assign_clusters(&g, &cfg, &mut Rng::new(7));
            let mut seen = std::collections::HashSet::new();
            for e in &state.assignment_edges {
                let (a, b) = e.endpoints();
                let (member, center) = if state.is_center[a as usize] {
                    (b, a)
                } else {
                    (a, b)
                };
                assert_eq!(state.center[member as usize], Some(center));
                assert!(g.has_edge(member, center).unwrap());
                assert!(seen.insert(member), "two assignment edges for {member}");
            }
            // Every clustered non-center has exactly one assignment edge.
            let non_center_clustered = (0..30)
                .filter(|&v| state.center[v].is_some() && !state.is_center[v])
                .count();
            assert_eq!(seen.len(), non_center_clustered);
        }
    }

    #[test]
    fn probe_branch_with_full_budget_clusters_everyone_adjacent_to_a_center() {
        let g = gen_complete(20).unwrap();
        let cfg = ClusterConfig {
            center_probability: 0.25,
            center_scan: false,
            probe_cap: 40, // >= deg, full scan
        };
        let state = assign_clusters(&g, &cfg, &mut Rng::new(9));
        if state.center_count() > 0 {
            assert_eq!(state.clustered_count(), 20);
        }
    }

    #[test]
    fn sampled_visit_full_scan_matches_neighbor_list() {
        let g = gen_complete(8).unwrap();
        let mut seen = Vec::new();
        visit_sampled_neighbors(&g, 3, 100, &mut Rng::new(1), |w| {
            seen.push(w);
            true
        });
        assert_eq!(seen, g.neighbors(3));
    }
}
