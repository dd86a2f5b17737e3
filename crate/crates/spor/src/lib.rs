//! Adjacency oracles for graph sparsifiers.
//!
//! An adjacency oracle is a frozen data structure that answers "is edge
//! `(u, v)` in the sparse subgraph `H`?" deterministically in near-constant
//! time, for a subgraph `H` that is never materialized. Preprocessing is
//! sublinear in the edge count on dense inputs; the user pays per query
//! instead. This crate builds such oracles for:
//!
//! - sparse spanning subgraphs on at most `(1 + ε) n` edges ([`sss`]),
//! - k-connectivity certificates on at most `(1 + ε) k n` edges ([`kcc`]),
//! - 3- and 5-spanners via degree-bucketed clustering ([`spanner3`],
//!   [`spanner5`]),
//! - `(2k-1)`-spanners via sampled multi-round clustering ([`spanner_bs`]),
//!
//! plus brute-force verifiers for every guarantee ([`verify`]), instance
//! generators and graph I/O ([`graph`]), and a small CLI ([`cli`]).
//!
//! Every randomized build is driven by an explicit 64-bit seed through
//! [`rng::Rng`]; identical seeds reproduce identical oracles, stats, and
//! enumerations, byte for byte.

pub mod cli;
pub mod cluster;
pub mod components;
pub mod edge_sampler;
pub mod error;
pub mod graph;
pub mod kcc;
pub mod oracle;
pub mod rng;
pub mod spanner3;
pub mod spanner5;
pub mod spanner_bs;
pub mod sss;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Edge, Graph, NodeId, OrientedEdge};
pub use oracle::AdjacencyOracle;
pub use rng::Rng;
