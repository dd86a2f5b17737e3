//! 3-spanner adjacency oracle via degree-bucketed clustering.
//!
//! Degrees at least `√n` are tiled by buckets `[2^j √n, 2^(j+1) √n)`, the top
//! bucket clamped at `n`. Each non-empty bucket gets an independent
//! structure: cluster centers sampled with probability `c log n / ℓ`,
//! cluster assignment either by scanning center adjacency lists (`ℓ ≥ √D`)
//! or by per-node random probing, then a per-node edge-sampling pass that
//! records at most one edge to each foreign cluster. A query answers YES if
//! the min endpoint degree is below `√n` or any structure says YES; a
//! structure says NO for edges it can reroute through recorded two- and
//! three-hop paths.
//!
//! Inputs with average degree below `√n` get a pass-through oracle (YES to
//! every edge of the graph).

use std::collections::HashSet;
use std::time::Instant;

use serde::Serialize;

use crate::cluster::{assign_clusters, visit_sampled_neighbors, ClusterConfig, ClusterState};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::oracle::AdjacencyOracle;
use crate::rng::{ceil_log2, Rng};

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Spanner3Params {
    /// Edge-sampling budget scale: each node samples `c * r * log n`
    /// incident edges.
    pub r: usize,
    /// Sampling constant. The asymptotic analysis wants a large value; 6
    /// keeps desk-scale sampling below whole-adjacency-list saturation.
    pub c: f64,
    pub seed: u64,
}

impl Spanner3Params {
    pub fn new(r: usize, seed: u64) -> Self {
        Spanner3Params { r, c: 6.0, seed }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if self.r < 1 {
            return Err(Error::BadParameter("r must be >= 1".into()));
        }
        if !(self.c > 0.0) {
            return Err(Error::BadParameter("c must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Spanner3BucketStats {
    pub ell: f64,
    pub centers: usize,
    pub clustered: usize,
    pub recorded_edges: usize,
    pub adjacency_records: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Spanner3Stats {
    pub pass_through: bool,
    pub buckets: Vec<Spanner3BucketStats>,
    pub build_ms: f64,
}

/// One degree bucket's cluster structure.
#[derive(Debug)]
pub(crate) struct Spanner3Structure {
    pub(crate) ell: f64,
    pub(crate) clusters: ClusterState,
    /// (vertex, foreign cluster center) pairs with a recorded edge.
    pub(crate) vertex_cluster: HashSet<(NodeId, NodeId)>,
    /// All edges this structure recorded (assignment + sampled).
    pub(crate) recorded: HashSet<(NodeId, NodeId)>,
}

impl Spanner3Structure {
    /// Query rules 2-5; the global `min degree < √n` rule is handled once by
    /// the oracle.
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
        if cs == ct {
            return false;
        }
        if self.vertex_cluster.contains(&(s, ct)) || self.vertex_cluster.contains(&(t, cs)) {
            return false;
        }
        true
    }
}

fn key(a: NodeId, b: NodeId) -> (NodeId, NodeId) {
    (a.min(b), a.max(b))
}

/// Build one bucket structure with lower bound `ell`. Also the internal
/// entry point for single-structure (approximately regular) configurations.
pub(crate) fn build_structure(
    g: &Graph,
    ell: f64,
    params: &Spanner3Params,
    rng: &mut Rng,
) -> Spanner3Structure {
    let n = g.node_count();
    let log_n = f64::from(ceil_log2(n));
    let avg_deg = g.average_degree();
    let cfg = ClusterConfig {
        center_probability: params.c * log_n / ell,
        center_scan: ell >= avg_deg.sqrt(),
        probe_cap: (params.c * ell * log_n).ceil() as usize,
    };
    let clusters = assign_clusters(g, &cfg, rng);
    let mut structure = Spanner3Structure {
        ell,
        vertex_cluster: HashSet::new(),
        recorded: clusters
            .assignment_edges
            .iter()
            .map(|e| e.endpoints())
            .collect(),
        clusters,
    };
    let budget = (params.c * params.r as f64 * log_n).ceil() as usize;
    for v in 0..n as NodeId {
        let cv = structure.clusters.center[v as usize];
        visit_sampled_neighbors(g, v, budget, rng, |w| {
            if let Some(cw) = structure.clusters.center[w as usize] {
                if cv != Some(cw) && structure.vertex_cluster.insert((v, cw)) {
                    structure.recorded.insert(key(v, w));
                }
            }
            true
        });
    }
    structure
}

/// Frozen 3-spanner oracle. Immutable; safe for concurrent queries.
#[derive(Debug)]
pub struct Spanner3Oracle {
    degree_threshold: f64,
    degrees: Vec<u32>,
    pass_through: bool,
    structures: Vec<Spanner3Structure>,
    stats: Spanner3Stats,
}

pub fn build_spanner3(g: &Graph, params: &Spanner3Params) -> Result<Spanner3Oracle> {
    params.validate()?;
    let start = Instant::now();
    let n = g.node_count();
    let threshold = (n as f64).sqrt();
    let degrees: Vec<u32> = (0..n as NodeId).map(|v| g.degree(v) as u32).collect();
    let pass_through = g.average_degree() < threshold;
    let mut structures = Vec::new();
    let mut bucket_stats = Vec::new();
    if !pass_through {
        let root = Rng::new(params.seed);
        let num_buckets = ceil_log2(n).div_ceil(2);
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
            let mut rng = root.substream_indexed("spanner3-bucket", u64::from(j));
            let s = build_structure(g, ell, params, &mut rng);
            bucket_stats.push(Spanner3BucketStats {
                ell,
                centers: s.clusters.center_count(),
                clustered: s.clusters.clustered_count(),
                recorded_edges: s.recorded.len(),
                adjacency_records: s.vertex_cluster.len(),
            });
            structures.push(s);
        }
    }
    let stats = Spanner3Stats {
        pass_through,
        buckets: bucket_stats,
        build_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    Ok(Spanner3Oracle {
        degree_threshold: threshold,
        degrees,
        pass_through,
        structures,
        stats,
    })
}

impl Spanner3Oracle {
    pub fn stats(&self) -> &Spanner3Stats {
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

impl AdjacencyOracle for Spanner3Oracle {
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_complete, gen_gnp};
    use crate::verify::check_stretch;

    #[test]
    fn sparse_input_is_pass_through() {
        let g = gen_gnp(100, 0.03, &mut Rng::new(1)).unwrap();
        assert!(g.average_degree() < 10.0);
        let o = build_spanner3(&g, &Spanner3Params::new(4, 3)).unwrap();
        assert!(o.is_pass_through());
        assert_eq!(o.enumerate_yes_edges(&g).unwrap(), g.edges());
    }

    #[test]
    fn k400_every_node_clustered_in_relevant_bucket() {
        // All degrees are 399, so exactly one bucket structure exists; every
        // node there must be clustered.
        let g = gen_complete(400).unwrap();
        for seed in 0..50 {
            let o = build_spanner3(&g, &Spanner3Params::new(20, seed)).unwrap();
            assert_eq!(o.structures.len(), 1, "seed {seed}");
            assert_eq!(
                o.structures[0].clusters.clustered_count(),
                400,
                "seed {seed}"
            );
        }
    }

    #[test]
    fn k400_stretch_at_most_3() {
        let g = gen_complete(400).unwrap();
        for seed in [2, 71] {
            let o = build_spanner3(&g, &Spanner3Params::new(20, seed)).unwrap();
            let yes = o.enumerate_yes_edges(&g).unwrap();
            let report = check_stretch(&yes, &g, 3).unwrap();
            assert!(report.pass, "seed {seed}: {:?}", report.witnesses.first());
        }
    }

    #[test]
    fn gnp_stretch_at_most_3() {
        let g = gen_gnp(300, 0.4, &mut Rng::new(5)).unwrap();
        let r = (300f64).sqrt() as usize;
        for seed in [1, 9] {
            let o = build_spanner3(&g, &Spanner3Params::new(r, seed)).unwrap();
            let yes = o.enumerate_yes_edges(&g).unwrap();
            let report = check_stretch(&yes, &g, 3).unwrap();
            assert!(report.pass, "seed {seed}: {:?}", report.witnesses.first());
        }
    }

    #[test]
    fn single_structure_same_cluster_no_edges_have_center_witness() {
        // Approximately-regular configuration: one structure, ell = D. A
        // same-cluster non-center pair answered NO must have both assignment
        // edges recorded, giving the 2-path through the center.
        let g = gen_complete(120).unwrap();
        let params = Spanner3Params::new(8, 42);
        let mut rng = Rng::new(params.seed).substream("regular-3");
        let s = build_structure(&g, g.average_degree(), &params, &mut rng);
        assert_eq!(s.clusters.clustered_count(), 120);
        let mut checked = 0;
        for e in g.edges() {
            let (a, b) = e.endpoints();
            let min_deg = g.degree(a).min(g.degree(b));
            if s.answer(a, b, min_deg) {
                continue;
            }
            let (ca, cb) = (
                s.clusters.center[a as usize].unwrap(),
                s.clusters.center[b as usize].unwrap(),
            );
            if ca != cb {
                continue;
            }
            assert!(s.recorded.contains(&key(a, ca)), "({a},{b}) missing a-side");
            assert!(s.recorded.contains(&key(b, cb)), "({a},{b}) missing b-side");
            checked += 1;
        }
        assert!(checked > 0, "no same-cluster NO edges exercised");
    }

    #[test]
    fn per_pair_record_uniqueness() {
        let g = gen_gnp(200, 0.5, &mut Rng::new(8)).unwrap();
        let o = build_spanner3(&g, &Spanner3Params::new(6, 13)).unwrap();
        for s in &o.structures {
            // vertex_cluster is a set, so uniqueness holds by construction;
            // check the recorded edges are consistent with it and E(G).
            for &(u, v) in &s.recorded {
                assert!(g.has_edge(u, v).unwrap());
            }
        }
    }

    #[test]
    fn rejects_zero_r() {
        let g = gen_complete(9).unwrap();
        assert!(build_spanner3(&g, &Spanner3Params::new(0, 1)).is_err());
    }
}
