//! 5-spanner adjacency oracle.
//!
//! Identical preprocessing to the 3-spanner up to the recording rule: the
//! edge-sampling pass records at most one edge per unordered pair of
//! clusters (cluster-cluster adjacency instead of vertex-cluster adjacency),
//! and buckets tile `[n^(1/3), n]`. A NO answer for a cross-cluster edge is
//! backed by a recorded path center -> recorded pair edge -> center of
//! length at most 5.

use std::collections::HashMap;
use std::time::Instant;

use serde::Serialize;

use crate::cluster::{assign_clusters, visit_sampled_neighbors, ClusterConfig, ClusterState};
use crate::error::Result;
use crate::graph::{Graph, NodeId};
use crate::oracle::AdjacencyOracle;
use crate::rng::{ceil_log2, Rng};
use crate::spanner3::Spanner3Params;

#[derive(Debug, Clone, Serialize)]
pub struct Spanner5BucketStats {
    pub ell: f64,
    pub centers: usize,
    pub clustered: usize,
    pub recorded_edges: usize,
    pub cluster_pair_records: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Spanner5Stats {
    pub pass_through: bool,
    pub buckets: Vec<Spanner5BucketStats>,
    pub build_ms: f64,
}

#[derive(Debug)]
pub(crate) struct Spanner5Structure {
    pub(crate) ell: f64,
    pub(crate) clusters: ClusterState,
    /// Unordered cluster pair (smaller center first) -> its recorded edge,
    /// oriented so the first endpoint lies in the first cluster.
    pub(crate) cluster_pairs: HashMap<(NodeId, NodeId), (NodeId, NodeId)>,
    pub(crate) recorded: std::collections::HashSet<(NodeId, NodeId)>,
}

fn key(a: NodeId, b: NodeId) -> (NodeId, NodeId) {
    (a.min(b), a.max(b))
}

impl Spanner5Structure {
    pub(crate) fn answer(&self, s: NodeId, t: NodeId, min_deg: usize) -> bool {
        if self.recorded.contains(&key(s, t)) {
            return true;
        }
        let (cs, ct) = (
            self.clusters.center[s as usize],
            self.clusters.center[t as usize],
        );
        let (Some(cs), Some(ct)) = (cs, ct) else {
            return false;
        };
        if min_deg as f64 > 2.0 * self.ell {
            return false;
        }
        if cs == ct || self.cluster_pairs.contains_key(&key(cs, ct)) {
            return false;
        }
        true
    }
}

pub(crate) fn build_structure5(
    g: &Graph,
    ell: f64,
    params: &Spanner3Params,
    rng: &mut Rng,
) -> Spanner5Structure {
    let n = g.node_count();
    let log_n = f64::from(ceil_log2(n));
    let avg_deg = g.average_degree();
    let cfg = ClusterConfig {
        center_probability: params.c * log_n / ell,
        center_scan: ell >= avg_deg.sqrt(),
        probe_cap: (params.c * ell * log_n).ceil() as usize,
    };
    let clusters = assign_clusters(g, &cfg, rng);
    let mut structure = Spanner5Structure {
        ell,
        cluster_pairs: HashMap::new(),
        recorded: clusters
            .assignment_edges
            .iter()
            .map(|e| e.endpoints())
            .collect(),
        clusters,
    };
    let budget = (params.c * params.r as f64 * log_n).ceil() as usize;
    for v in 0..n as NodeId {
        let Some(cv) = structure.clusters.center[v as usize] else {
            // Cluster-pair records need both endpoints clustered.
            continue;
        };
        visit_sampled_neighbors(g, v, budget, rng, |w| {
            if let Some(cw) = structure.clusters.center[w as usize] {
                if cw != cv {
                    structure.cluster_pairs.entry(key(cv, cw)).or_insert_with(|| {
                        structure.recorded.insert(key(v, w));
                        if cv < cw {
                            (v, w)
                        } else {
                            (w, v)
                        }
                    });
                }
            }
            true
        });
    }
    structure
}

/// Frozen 5-spanner oracle. Immutable; safe for concurrent queries.
#[derive(Debug)]
pub struct Spanner5Oracle {
    degree_threshold: f64,
    degrees: Vec<u32>,
    pass_through: bool,
    structures: Vec<Spanner5Structure>,
    stats: Spanner5Stats,
}

pub fn build_spanner5(g: &Graph, params: &Spanner3Params) -> Result<Spanner5Oracle> {
    params.validate()?;
    let start = Instant::now();
    let n = g.node_count();
    let threshold = (n as f64).cbrt();
    let degrees: Vec<u32> = (0..n as NodeId).map(|v| g.degree(v) as u32).collect();
    let pass_through = g.average_degree() < threshold;
    let mut structures = Vec::new();
    let mut bucket_stats = Vec::new();
    if !pass_through {
        let root = Rng::new(params.seed);
        let num_buckets = (2 * ceil_log2(n)).div_ceil(3);
        for j in 0..num_buckets {
            let ell = (1u64 << j) as f64 * threshold;
            let upper = if j + 1 == num_buckets {
                n as f64 + 1.0
            } else {
                2.0 * ell
            };
            let occupied = degrees
                .iter()
                .any(|&d| f64::from(d) >= ell && f64::from(d) < upper);
            if !occupied {
                continue;
            }
            let mut rng = root.substream_indexed("spanner5-bucket", u64::from(j));
            let s = build_structure5(g, ell, params, &mut rng);
            bucket_stats.push(Spanner5BucketStats {
                ell,
                centers: s.clusters.center_count(),
                clustered: s.clusters.clustered_count(),
                recorded_edges: s.recorded.len(),
                cluster_pair_records: s.cluster_pairs.len(),
            });
            structures.push(s);
        }
    }
    let stats = Spanner5Stats {
        pass_through,
        buckets: bucket_stats,
        build_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    Ok(Spanner5Oracle {
        degree_threshold: threshold,
        degrees,
        pass_through,
        structures,
        stats,
    })
}

impl Spanner5Oracle {
    pub fn stats(&self) -> &Spanner5Stats {
        &self.stats
    }

    pub fn is_pass_through(&self) -> bool {
        self.pass_through
    }

    pub(crate) fn query_assuming_edge(&self, u: NodeId, v: NodeId) -> bool {
        if self.pass_through {
            return true;
        }
        let min_deg = self.degrees[u as usize].min(self.degrees[v as usize]) as usize;
        if (min_deg as f64) < self.degree_threshold {
            return true;
        }
        self.structures.iter().any(|s| s.answer(u, v, min_deg))
    }
}

impl AdjacencyOracle for Spanner5Oracle {
    fn query(&self, g: &Graph, u: NodeId, v: NodeId) -> Result<bool> {
        if u == v {
            g.has_edge(u, v)?;
            return Ok(false);
        }
        if !g.has_edge(u, v)? {
            return Ok(false);
        }
        Ok(self.query_assuming_edge(u, v))
    }
}
