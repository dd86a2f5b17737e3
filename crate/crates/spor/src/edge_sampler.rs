//! Uniform sampling over `E_b` — the edges with at least one endpoint in the
//! active size bucket — under node removals.
//!
//! Nodes currently in the bucket are held in degree groups: group `i` holds
//! nodes of degree in `[2^i, 2^(i+1))`, together with the group's degree sum.
//! A sample runs three stages: pick a group proportional to its degree sum,
//! pick a node in the group and accept with probability `deg / 2^(i+1)`
//! (rejection flattens the within-group degree spread), then pick a uniform
//! incident edge. An edge whose far endpoint is also in the bucket appears
//! under both orientations, so it is kept only with probability 1/2;
//! otherwise the whole process restarts. The result is uniform over `E_b`.

use crate::components::ComponentForest;
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, OrientedEdge};
use crate::rng::{ceil_log2, Rng};

#[derive(Debug, Clone, Copy)]
struct Slot {
    group: u32,
    pos: u32,
}

/// Dynamic uniform sampler over `E_b` for one fixed bucket index.
#[derive(Debug)]
pub struct BucketEdgeSampler {
    bucket: u32,
    groups: Vec<Vec<NodeId>>,
    deg_sums: Vec<u64>,
    total: u64,
    slot: Vec<Option<Slot>>,
    degree: Vec<u32>,
    retry_cap: u32,
}

impl BucketEdgeSampler {
    /// Scan all nodes and group those currently in bucket `b` by degree.
    /// Degree-0 nodes are skipped; they contribute no edges to `E_b`.
    pub fn rebuild_for_bucket(g: &Graph, forest: &mut ComponentForest, b: u32) -> Self {
        let n = g.node_count();
        let max_group = if n >= 2 { (n - 1).ilog2() } else { 0 };
        let mut sampler = BucketEdgeSampler {
            bucket: b,
            groups: vec![Vec::new(); max_group as usize + 1],
            deg_sums: vec![0; max_group as usize + 1],
            total: 0,
            slot: vec![None; n],
            degree: (0..n as NodeId).map(|v| g.degree(v) as u32).collect(),
            retry_cap: 64 * ceil_log2(n).max(1),
        };
        for v in 0..n as NodeId {
            let deg = sampler.degree[v as usize];
            if deg == 0 || forest.bucket(v) != b {
                continue;
            }
            let gi = deg.ilog2();
            sampler.slot[v as usize] = Some(Slot {
                group: gi,
                pos: sampler.groups[gi as usize].len() as u32,
            });
            sampler.groups[gi as usize].push(v);
            sampler.deg_sums[gi as usize] += u64::from(deg);
            sampler.total += u64::from(deg);
        }
        sampler
    }

    pub fn bucket(&self) -> u32 {
        self.bucket
    }

    /// True when `E_b` is empty (total degree over bucket members is zero).
    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.slot[v as usize].is_some()
    }

    /// Remove a node that left bucket `b`; swap-with-last, O(1).
    pub fn remove_node(&mut self, v: NodeId) -> Result<()> {
        let Slot { group, pos } = self.slot[v as usize]
            .take()
            .ok_or(Error::NodeAbsent { node: v })?;
        let list = &mut self.groups[group as usize];
        let last = list.len() - 1;
        list.swap(pos as usize, last);
        list.pop();
        if (pos as usize) < list.len() {
            let moved = list[pos as usize];
            self.slot[moved as usize] = Some(Slot { group, pos });
        }
        let deg = u64::from(self.degree[v as usize]);
        self.deg_sums[group as usize] -= deg;
        self.total -= deg;
        Ok(())
    }

    /// Draw a uniform edge from `E_b`, oriented so `from` is in bucket `b`.
    /// Returns `None` when `E_b` is empty. Bucket membership of the far
    /// endpoint is tested against the live forest.
    pub fn sample(
        &self,
        g: &Graph,
        forest: &mut ComponentForest,
        rng: &mut Rng,
    ) -> Result<Option<OrientedEdge>> {
        if self.total == 0 {
            return Ok(None);
        }
        let mut attempts = 0u32;
        loop {
            attempts += 1;
            if attempts > self.retry_cap {
                return Err(Error::SamplerStuck {
                    bucket: self.bucket,
                    attempts,
                });
            }
            // Stage 1: group proportional to its degree sum.
            let mut x = rng.index_u64(self.total);
            let mut gi = 0usize;
            for (i, &s) in self.deg_sums.iter().enumerate() {
                if x < s {
                    gi = i;
                    break;
                }
                x -= s;
            }
            // Stage 2: uniform node in the group, accepted with probability
            // deg(u) / 2^(i+1); acceptance is at least 1/2 by group range.
            let u = loop {
                let cand = self.groups[gi][rng.index(self.groups[gi].len())];
                let accept =
                    f64::from(self.degree[cand as usize]) / (1u64 << (gi + 1)) as f64;
                if rng.unit() < accept {
                    break cand;
                }
                attempts += 1;
                if attempts > self.retry_cap {
                    return Err(Error::SamplerStuck {
                        bucket: self.bucket,
                        attempts,
                    });
                }
            };
            // Stage 3: uniform incident edge; halve the rate of edges that
            // appear under both orientations.
            let w = g.neighbors(u)[rng.index(self.degree[u as usize] as usize)];
            if forest.bucket(w) != self.bucket || rng.chance(0.5) {
                return Ok(Some(OrientedEdge { from: u, to: w }));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_complete, gen_gnp, Edge, Graph};
    use std::collections::HashMap;

    /// Brute-force E_b: edges with at least one endpoint marked in-bucket.
    fn brute_force_eb(g: &Graph, in_bucket: &[bool]) -> Vec<Edge> {
        g.edges()
            .into_iter()
            .filter(|e| in_bucket[e.u() as usize] || in_bucket[e.v() as usize])
            .collect()
    }

    /// Arrange a forest so exactly the marked nodes sit in bucket 0:
    /// unmarked nodes are paired up (one triple if the count is odd).
    fn forest_with_bucket0(marked: &[bool]) -> ComponentForest {
        let n = marked.len();
        let mut f = ComponentForest::new(n);
        let out: Vec<NodeId> = (0..n as NodeId).filter(|&v| !marked[v as usize]).collect();
        assert_ne!(out.len(), 1, "cannot demote a single unmarked node");
        for pair in out.chunks(2) {
            if pair.len() == 2 {
                f.union(pair[0], pair[1]);
            } else {
                f.union(pair[0], out[0]);
            }
        }
        for v in 0..n as NodeId {
            assert_eq!(f.bucket(v) == 0, marked[v as usize]);
        }
        f
    }

    fn empirical_tv(
        g: &Graph,
        f: &mut ComponentForest,
        sampler: &BucketEdgeSampler,
        eb: &[Edge],
        draws: usize,
        rng: &mut Rng,
    ) -> f64 {
        let mut counts: HashMap<Edge, usize> = HashMap::new();
        for _ in 0..draws {
            let e = sampler.sample(g, f, rng).unwrap().unwrap().canonical();
            *counts.entry(e).or_default() += 1;
        }
        let uniform = 1.0 / eb.len() as f64;
        let mut tv = 0.0;
        for e in eb {
            let p = counts.remove(e).unwrap_or(0) as f64 / draws as f64;
            tv += (p - uniform).abs();
        }
        assert!(counts.is_empty(), "sampler produced edges outside E_b");
        tv / 2.0
    }

    #[test]
    fn empty_when_no_bucket_member_has_edges() {
        let g = gen_complete(4).unwrap();
        let mut f = ComponentForest::new(4);
        // No component of size >= 32 exists, so bucket 5 is empty.
        let s = BucketEdgeSampler::rebuild_for_bucket(&g, &mut f, 5);
        assert!(s.is_empty());
        let mut rng = Rng::new(0);
        assert_eq!(s.sample(&g, &mut f, &mut rng).unwrap(), None);
    }

    #[test]
    fn k4_fresh_forest_grouping() {
        let g = gen_complete(4).unwrap();
        let mut f = ComponentForest::new(4);
        let s = BucketEdgeSampler::rebuild_for_bucket(&g, &mut f, 0);
        // Every node has degree 3, range [2, 4): group 1, degree sum 12.
        assert_eq!(s.groups[1].len(), 4);
        assert_eq!(s.deg_sums[1], 12);
        assert_eq!(s.total, 12);
    }

    #[test]
    fn path_graph_grouping() {
        let g = Graph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let mut f = ComponentForest::new(4);
        let s = BucketEdgeSampler::rebuild_for_bucket(&g, &mut f, 0);
        assert_eq!(s.groups[0], vec![0, 3]);
        assert_eq!(s.groups[1], vec![1, 2]);
    }

    #[test]
    fn remove_to_empty_and_double_remove() {
        let g = Graph::from_edge_list(2, &[(0, 1)]).unwrap();
        let mut f = ComponentForest::new(2);
        let mut s = BucketEdgeSampler::rebuild_for_bucket(&g, &mut f, 0);
        s.remove_node(0).unwrap();
        s.remove_node(1).unwrap();
        assert!(s.is_empty());
        assert!(matches!(s.remove_node(0), Err(Error::NodeAbsent { node: 0 })));
    }

    #[test]
    fn removed_node_never_sampled_as_bucket_endpoint() {
        let g = gen_complete(5).unwrap();
        let mut f = ComponentForest::new(5);
        let mut s = BucketEdgeSampler::rebuild_for_bucket(&g, &mut f, 0);
        s.remove_node(2).unwrap();
        let mut rng = Rng::new(4);
        for _ in 0..2000 {
            let e = s.sample(&g, &mut f, &mut rng).unwrap().unwrap();
            assert_ne!(e.from, 2);
        }
    }

    #[test]
    fn single_edge_with_one_bucket_endpoint_is_forced() {
        let g = Graph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap();
        let mut f = ComponentForest::new(3);
        // Pull 1 and 2 into a size-2 component (bucket 1); node 0 stays in
        // bucket 0, so E_0 = {(0, 1)}.
        f.union(1, 2);
        let s = BucketEdgeSampler::rebuild_for_bucket(&g, &mut f, 0);
        let mut rng = Rng::new(8);
        for _ in 0..200 {
            let e = s.sample(&g, &mut f, &mut rng).unwrap().unwrap();
            assert_eq!((e.from, e.to), (0, 1));
        }
    }

    #[test]
    fn triangle_sampling_is_uniform() {
        let g = gen_complete(3).unwrap();
        let mut f = ComponentForest::new(3);
        let s = BucketEdgeSampler::rebuild_for_bucket(&g, &mut f, 0);
        let mut rng = Rng::new(12);
        let draws = 300_000;
        let mut counts: HashMap<Edge, usize> = HashMap::new();
        for _ in 0..draws {
            let e = s.sample(&g, &mut f, &mut rng).unwrap().unwrap().canonical();
            *counts.entry(e).or_default() += 1;
        }
        for (_, c) in counts {
            let freq = c as f64 / draws as f64;
            assert!((freq - 1.0 / 3.0).abs() < 0.01, "freq {freq}");
        }
    }

    #[test]
    fn both_orientation_edges_not_oversampled() {
        // Path 0-1-2 with only node 1 demoted: E_0 = both edges, and edge
        // (0,1) has one bucket endpoint while... all nodes singleton instead:
        // every edge has both endpoints in bucket 0 except none. Use a mixed
        // marking: mark {0, 1}, demote {2, 3} -> E_0 = {(0,1), (1,2)}, where
        // (0,1) is double-oriented and (1,2) single-oriented.
        let g = Graph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let marked = vec![true, true, false, false];
        let mut f = forest_with_bucket0(&marked);
        let s = BucketEdgeSampler::rebuild_for_bucket(&g, &mut f, 0);
        let eb = brute_force_eb(&g, &marked);
        assert_eq!(eb.len(), 2);
        let mut rng = Rng::new(21);
        let tv = empirical_tv(&g, &mut f, &s, &eb, 100_000, &mut rng);
        assert!(tv <= 0.02, "tv = {tv}");
    }

    #[test]
    fn uniformity_over_random_instances_and_markings() {
        let mut seed_rng = Rng::new(2024);
        for trial in 0..6 {
            let n = 12 + seed_rng.index(19); // up to 30 nodes
            let g = gen_gnp(n, 0.3, &mut seed_rng).unwrap();
            let mut marked: Vec<bool> = (0..n).map(|_| seed_rng.chance(0.5)).collect();
            let unmarked = marked.iter().filter(|&&m| !m).count();
            if unmarked == 1 {
                let i = marked.iter().position(|&m| !m).unwrap();
                marked[i] = true;
            }
            let eb = brute_force_eb(&g, &marked);
            if eb.is_empty() {
                continue;
            }
            let mut f = forest_with_bucket0(&marked);
            let s = BucketEdgeSampler::rebuild_for_bucket(&g, &mut f, 0);
            let mut rng = Rng::new(500 + trial);
            let tv = empirical_tv(&g, &mut f, &s, &eb, 100_000, &mut rng);
            assert!(tv <= 0.02, "trial {trial}: tv = {tv}, |E_b| = {}", eb.len());
        }
    }

    #[test]
    fn stage2_acceptance_never_below_half() {
        // Group membership puts deg(u) >= 2^i, so deg(u) / 2^(i+1) >= 1/2.
        let g = gen_gnp(40, 0.25, &mut Rng::new(3)).unwrap();
        let mut f = ComponentForest::new(40);
        let s = BucketEdgeSampler::rebuild_for_bucket(&g, &mut f, 0);
        for (i, group) in s.groups.iter().enumerate() {
            for &v in group {
                let p = f64::from(s.degree[v as usize]) / (1u64 << (i + 1)) as f64;
                assert!(p >= 0.5);
            }
        }
    }
}
