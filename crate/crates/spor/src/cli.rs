//! Command-line front end: generate instances, build oracles, enumerate and
//! verify YES-sets, and sweep benchmark grids.
//!
//! Exit codes: 0 success / verification pass, 1 verification fail, 2 error.
//! Seeds are mandatory everywhere; no entropy is drawn from the clock, so a
//! fixed command line reproduces its output byte for byte (`--omit-times`
//! additionally zeroes the wall-clock fields inside reports).

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{self, Edge, Graph};
use crate::kcc::{build_kcc, KccStats};
use crate::oracle::AdjacencyOracle;
use crate::rng::Rng;
use crate::spanner3::{build_spanner3, Spanner3Params, Spanner3Stats};
use crate::spanner5::{build_spanner5, Spanner5Stats};
use crate::spanner_bs::{build_bs, BsParams, BsStats};
use crate::sss::{build_sss, SssBuildParams, SssStats};
use crate::verify::{
    baseline_sparse_certificate, check_k_certificate, check_spanning, check_stretch,
    VerificationReport,
};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "spor", version, about = "Adjacency oracles for sparse spanning subgraphs, connectivity certificates, and spanners")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a benchmark or adversarial instance and write it to a file.
    Gen(GenArgs),
    /// Build an oracle over a graph file and emit build statistics.
    Build(BuildArgs),
    /// Check an enumerated YES-edge file against the matching guarantee.
    Verify(VerifyArgs),
    /// Sweep a (n, density, parameter) grid and tabulate the results.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    Sss,
    Kcc,
    Spanner3,
    Spanner5,
    Bs,
}

impl Algorithm {
    fn name(self) -> &'static str {
        match self {
            Algorithm::Sss => "sss",
            Algorithm::Kcc => "kcc",
            Algorithm::Spanner3 => "spanner3",
            Algorithm::Spanner5 => "spanner5",
            Algorithm::Bs => "bs",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphKind {
    Complete,
    Gnp,
    Tree,
    TwoCliques,
    DisjointGnp,
}

impl GraphKind {
    fn name(self) -> &'static str {
        match self {
            GraphKind::Complete => "complete",
            GraphKind::Gnp => "gnp",
            GraphKind::Tree => "tree",
            GraphKind::TwoCliques => "two-cliques",
            GraphKind::DisjointGnp => "disjoint-gnp",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FileFormat {
    Text,
    Binary,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub kind: GraphKind,
    /// Node count (per part for disjoint-gnp).
    #[arg(long)]
    pub n: usize,
    /// Edge probability for gnp kinds.
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    /// Part count for disjoint-gnp.
    #[arg(long, default_value_t = 10)]
    pub parts: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value = "text")]
    pub format: FileFormat,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[arg(long, value_enum)]
    pub algo: Algorithm,
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub seed: u64,
    /// Size slack for sss/kcc.
    #[arg(long, default_value_t = 0.25)]
    pub epsilon: f64,
    /// Layer count (kcc) or stretch parameter (bs).
    #[arg(long)]
    pub k: Option<usize>,
    /// Sampling budget scale for spanner3/spanner5; defaults to floor(sqrt n)
    /// and floor(cbrt n) respectively.
    #[arg(long)]
    pub r: Option<usize>,
    /// Sampling divisor for bs.
    #[arg(long, default_value_t = 1.0)]
    pub rho: f64,
    /// Sampling constant override (per-algorithm default otherwise).
    #[arg(long)]
    pub c: Option<f64>,
    /// Write the stats JSON here instead of stdout.
    #[arg(long)]
    pub stats_out: Option<PathBuf>,
    /// Enumerate the YES-set into this edge-list file. Costs O(m) queries and
    /// is timed separately from the build.
    #[arg(long)]
    pub enumerate: Option<PathBuf>,
    /// Zero wall-clock fields so outputs are byte-identical across runs.
    #[arg(long, default_value_t = false)]
    pub omit_times: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub algo: Algorithm,
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub yes_edges: PathBuf,
    #[arg(long, default_value_t = 0.25)]
    pub epsilon: f64,
    #[arg(long)]
    pub k: Option<usize>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum)]
    pub algo: Algorithm,
    #[arg(long, value_enum, default_value = "gnp")]
    pub kind: GraphKind,
    /// Comma-separated node counts.
    #[arg(long, value_delimiter = ',', default_value = "256")]
    pub n_list: Vec<usize>,
    /// Comma-separated densities (gnp probability; ignored otherwise).
    #[arg(long, value_delimiter = ',', default_value = "0.5")]
    pub p_list: Vec<f64>,
    /// Comma-separated values of the algorithm's main parameter:
    /// epsilon (sss), k (kcc), r (spanner3/5), rho (bs).
    #[arg(long, value_delimiter = ',')]
    pub params: Vec<f64>,
    #[arg(long, default_value_t = 3)]
    pub repeat: usize,
    #[arg(long)]
    pub seed: u64,
    /// Enumerate and verify each cell (slow; adds yes_edges / verify_pass).
    #[arg(long, default_value_t = false)]
    pub verify: bool,
    #[arg(long, value_enum, default_value = "json")]
    pub format: BenchFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = false)]
    pub omit_times: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BenchFormat {
    Json,
    Csv,
}

/// Top-level dispatch; maps outcomes onto the 0/1/2 exit-code contract.
pub fn run(cli: Cli) -> i32 {
    let outcome = match cli.command {
        Command::Gen(args) => cmd_gen(&args).map(|_| true),
        Command::Build(args) => cmd_build(&args).map(|_| true),
        Command::Verify(args) => cmd_verify(&args).map(|report| report.pass),
        Command::Bench(args) => cmd_bench(&args).map(|_| true),
    };
    match outcome {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

#[derive(Debug, Serialize)]
struct GenReport {
    schema: u32,
    kind: &'static str,
    n: usize,
    m: usize,
    seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    cut_edge: Option<(u32, u32)>,
}

fn generate(kind: GraphKind, n: usize, p: f64, parts: usize, seed: u64) -> Result<(Graph, Option<Edge>)> {
    let mut rng = Rng::new(seed).substream("gen");
    match kind {
        GraphKind::Complete => Ok((graph::gen_complete(n)?, None)),
        GraphKind::Gnp => Ok((graph::gen_gnp(n, p, &mut rng)?, None)),
        GraphKind::Tree => Ok((graph::gen_random_tree(n, &mut rng)?, None)),
        GraphKind::TwoCliques => {
            let (g, cut) = graph::gen_two_cliques_cut_edge(n, &mut rng)?;
            Ok((g, Some(cut)))
        }
        GraphKind::DisjointGnp => {
            if parts == 0 {
                return Err(Error::BadSize {
                    reason: "disjoint-gnp needs at least one part".into(),
                });
            }
            let pieces: Result<Vec<Graph>> =
                (0..parts).map(|_| graph::gen_gnp(n, p, &mut rng)).collect();
            Ok((graph::gen_disjoint_union(&pieces?)?, None))
        }
    }
}

pub fn cmd_gen(args: &GenArgs) -> Result<()> {
    let (g, cut) = generate(args.kind, args.n, args.p, args.parts, args.seed)?;
    let file = std::fs::File::create(&args.out)?;
    match args.format {
        FileFormat::Text => graph::write_text(&g, file)?,
        FileFormat::Binary => graph::write_binary(&g, file)?,
    }
    let report = GenReport {
        schema: SCHEMA_VERSION,
        kind: args.kind.name(),
        n: g.node_count(),
        m: g.edge_count(),
        seed: args.seed,
        cut_edge: cut.map(|e| e.endpoints()),
    };
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
enum AlgoStats {
    Sss(SssStats),
    Kcc(KccStats),
    Spanner3(Spanner3Stats),
    Spanner5(Spanner5Stats),
    Bs(BsStats),
}

#[derive(Debug, Serialize)]
struct BuildReport {
    schema: u32,
    algorithm: &'static str,
    n: usize,
    m: usize,
    seed: u64,
    params: serde_json::Value,
    build_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    yes_edges: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    enumerate_ms: Option<f64>,
    stats: AlgoStats,
}

enum BuiltOracle {
    Sss(crate::sss::SssOracle),
    Kcc(crate::kcc::KccOracle),
    Spanner3(crate::spanner3::Spanner3Oracle),
    Spanner5(crate::spanner5::Spanner5Oracle),
    Bs(crate::spanner_bs::BsOracle),
}

impl BuiltOracle {
    fn enumerate(&self, g: &Graph) -> Result<Vec<Edge>> {
        match self {
            BuiltOracle::Sss(o) => o.enumerate_yes_edges(g),
            BuiltOracle::Kcc(o) => o.enumerate_yes_edges(g),
            BuiltOracle::Spanner3(o) => o.enumerate_yes_edges(g),
            BuiltOracle::Spanner5(o) => o.enumerate_yes_edges(g),
            BuiltOracle::Bs(o) => o.enumerate_yes_edges(g),
        }
    }

    fn stats(&self) -> AlgoStats {
        match self {
            BuiltOracle::Sss(o) => AlgoStats::Sss(o.stats().clone()),
            BuiltOracle::Kcc(o) => AlgoStats::Kcc(o.stats().clone()),
            BuiltOracle::Spanner3(o) => AlgoStats::Spanner3(o.stats().clone()),
            BuiltOracle::Spanner5(o) => AlgoStats::Spanner5(o.stats().clone()),
            BuiltOracle::Bs(o) => AlgoStats::Bs(o.stats().clone()),
        }
    }
}

struct ResolvedBuild {
    oracle: BuiltOracle,
    params_json: serde_json::Value,
}

fn build_oracle(
    g: &Graph,
    algo: Algorithm,
    seed: u64,
    epsilon: f64,
    k: Option<usize>,
    r: Option<usize>,
    rho: f64,
    c: Option<f64>,
) -> Result<ResolvedBuild> {
    let n = g.node_count();
    match algo {
        Algorithm::Sss | Algorithm::Kcc => {
            let mut params = SssBuildParams::new(epsilon, seed);
            if let Some(c) = c {
                if c < 1.0 || c.fract() != 0.0 {
                    return Err(Error::BadParameter(
                        "c for sss/kcc must be a positive integer".into(),
                    ));
                }
                params.c = c as u32;
            }
            let params_json = serde_json::to_value(params)?;
            if algo == Algorithm::Sss {
                Ok(ResolvedBuild {
                    oracle: BuiltOracle::Sss(build_sss(g, &params)?),
                    params_json,
                })
            } else {
                let k = k.unwrap_or(2);
                let mut json = params_json;
                json["k"] = serde_json::json!(k);
                Ok(ResolvedBuild {
                    oracle: BuiltOracle::Kcc(build_kcc(g, k, &params)?),
                    params_json: json,
                })
            }
        }
        Algorithm::Spanner3 | Algorithm::Spanner5 => {
            let default_r = if algo == Algorithm::Spanner3 {
                (n as f64).sqrt() as usize
            } else {
                (n as f64).cbrt() as usize
            };
            let mut params = Spanner3Params::new(r.unwrap_or(default_r.max(1)), seed);
            if let Some(c) = c {
                params.c = c;
            }
            let params_json = serde_json::to_value(params)?;
            if algo == Algorithm::Spanner3 {
                Ok(ResolvedBuild {
                    oracle: BuiltOracle::Spanner3(build_spanner3(g, &params)?),
                    params_json,
                })
            } else {
                Ok(ResolvedBuild {
                    oracle: BuiltOracle::Spanner5(build_spanner5(g, &params)?),
                    params_json,
                })
            }
        }
        Algorithm::Bs => {
            let mut params = BsParams::new(k.unwrap_or(3), rho, seed);
            if let Some(c) = c {
                params.c = c;
            }
            Ok(ResolvedBuild {
                params_json: serde_json::to_value(params)?,
                oracle: BuiltOracle::Bs(build_bs(g, &params)?),
            })
        }
    }
}

pub fn cmd_build(args: &BuildArgs) -> Result<()> {
    let g = graph::read_graph(&args.graph)?;
    let start = Instant::now();
    let built = build_oracle(
        &g,
        args.algo,
        args.seed,
        args.epsilon,
        args.k,
        args.r,
        args.rho,
        args.c,
    )?;
    let build_ms = start.elapsed().as_secs_f64() * 1e3;

    let (yes_edges, enumerate_ms) = if let Some(path) = &args.enumerate {
        let start = Instant::now();
        let yes = built.oracle.enumerate(&g)?;
        let elapsed = start.elapsed().as_secs_f64() * 1e3;
        write_edge_file(path, g.node_count(), &yes)?;
        (Some(yes.len()), Some(elapsed))
    } else {
        (None, None)
    };

    let mut report = BuildReport {
        schema: SCHEMA_VERSION,
        algorithm: args.algo.name(),
        n: g.node_count(),
        m: g.edge_count(),
        seed: args.seed,
        params: built.params_json,
        build_ms,
        yes_edges,
        enumerate_ms,
        stats: built.oracle.stats(),
    };
    if args.omit_times {
        report.build_ms = 0.0;
        report.enumerate_ms = report.enumerate_ms.map(|_| 0.0);
    }
    let mut json = serde_json::to_value(&report)?;
    if args.omit_times {
        strip_times(&mut json);
    }
    let text = serde_json::to_string_pretty(&json)?;
    match &args.stats_out {
        Some(path) => std::fs::write(path, text + "\n")?,
        None => println!("{text}"),
    }
    Ok(())
}

/// YES-edge files reuse the text graph format: `n m` header, then edges.
fn write_edge_file(path: &Path, n: usize, edges: &[Edge]) -> Result<()> {
    let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(w, "{} {}", n, edges.len())?;
    for e in edges {
        writeln!(w, "{} {}", e.u(), e.v())?;
    }
    w.flush()?;
    Ok(())
}

fn read_edge_file(path: &Path, expect_n: usize) -> Result<Vec<Edge>> {
    let g = graph::read_graph(path)?;
    if g.node_count() != expect_n {
        return Err(Error::Parse(format!(
            "YES-edge file is over {} nodes, graph has {}",
            g.node_count(),
            expect_n
        )));
    }
    Ok(g.edges())
}

fn strip_times(value: &mut serde_json::Value) {
    match value {
        serde_json::Value::Object(map) => {
            for (key, v) in map.iter_mut() {
                if key.ends_with("_ms") {
                    if v.is_number() {
                        *v = serde_json::json!(0.0);
                    }
                } else {
                    strip_times(v);
                }
            }
        }
        serde_json::Value::Array(items) => items.iter_mut().for_each(strip_times),
        _ => {}
    }
}

#[derive(Debug, Serialize)]
struct VerifyOutput {
    schema: u32,
    algorithm: &'static str,
    report: VerificationReport,
    size_bound: Option<usize>,
    size_ok: bool,
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<VerificationReport> {
    let g = graph::read_graph(&args.graph)?;
    let yes = read_edge_file(&args.yes_edges, g.node_count())?;
    let n = g.node_count();
    let (report, size_bound) = match args.algo {
        Algorithm::Sss => {
            // Single-run hard cap: (1 + 2 epsilon) n.
            let bound = ((1.0 + 2.0 * args.epsilon) * n as f64).floor() as usize;
            (check_spanning(&yes, &g)?, Some(bound))
        }
        Algorithm::Kcc => {
            let k = args.k.unwrap_or(2);
            let bound = ((1.0 + 2.0 * args.epsilon) * (k * n) as f64).floor() as usize;
            (check_k_certificate(&yes, &g, k)?, Some(bound))
        }
        Algorithm::Spanner3 => (check_stretch(&yes, &g, 3)?, None),
        Algorithm::Spanner5 => (check_stretch(&yes, &g, 5)?, None),
        Algorithm::Bs => {
            let k = args.k.unwrap_or(3);
            (check_stretch(&yes, &g, 2 * k - 1)?, None)
        }
    };
    let size_ok = size_bound.is_none_or(|b| yes.len() <= b);
    let mut combined = report;
    combined.pass = combined.pass && size_ok;
    let output = VerifyOutput {
        schema: SCHEMA_VERSION,
        algorithm: args.algo.name(),
        report: combined.clone(),
        size_bound,
        size_ok,
    };
    println!("{}", serde_json::to_string_pretty(&output)?);
    Ok(combined)
}

#[derive(Debug, Serialize)]
struct BenchCell {
    algo: &'static str,
    kind: &'static str,
    n: usize,
    p: f64,
    param: f64,
    rep: usize,
    seed: u64,
    m: usize,
    build_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    yes_edges: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verify_pass: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    baseline_edges: Option<usize>,
}

pub fn cmd_bench(args: &BenchArgs) -> Result<()> {
    if args.params.is_empty() {
        return Err(Error::BadParameter("bench needs --params".into()));
    }
    let root = Rng::new(args.seed);
    let mut cells = Vec::new();
    for &n in &args.n_list {
        for &p in &args.p_list {
            for &param in &args.params {
                for rep in 0..args.repeat {
                    let label = format!("bench/{}/{}/{}/{}", args.kind.name(), n, p, param);
                    let cell_seed = root.substream_indexed(&label, rep as u64).seed();
                    let (g, _) = generate(args.kind, n, p, 10, cell_seed)?;
                    let (epsilon, k, r, rho) = bench_knobs(args.algo, param)?;
                    let start = Instant::now();
                    let built =
                        build_oracle(&g, args.algo, cell_seed, epsilon, k, r, rho, None)?;
                    let build_ms = start.elapsed().as_secs_f64() * 1e3;
                    let (yes_edges, verify_pass, baseline_edges) = if args.verify {
                        let yes = built.oracle.enumerate(&g)?;
                        let (pass, baseline) = bench_verify(args.algo, &g, &yes, k)?;
                        (Some(yes.len()), Some(pass), baseline)
                    } else {
                        (None, None, None)
                    };
                    cells.push(BenchCell {
                        algo: args.algo.name(),
                        kind: args.kind.name(),
                        n,
                        p,
                        param,
                        rep,
                        seed: cell_seed,
                        m: g.edge_count(),
                        build_ms: if args.omit_times { 0.0 } else { build_ms },
                        yes_edges,
                        verify_pass,
                        baseline_edges,
                    });
                }
            }
        }
    }
    let text = match args.format {
        BenchFormat::Json => serde_json::to_string_pretty(&serde_json::json!({
            "schema": SCHEMA_VERSION,
            "cells": cells,
        }))?,
        BenchFormat::Csv => {
            let mut out = String::from(
                "algo,kind,n,p,param,rep,seed,m,build_ms,yes_edges,verify_pass,baseline_edges\n",
            );
            for c in &cells {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{},{},{}\n",
                    c.algo,
                    c.kind,
                    c.n,
                    c.p,
                    c.param,
                    c.rep,
                    c.seed,
                    c.m,
                    c.build_ms,
                    c.yes_edges.map_or(String::new(), |v| v.to_string()),
                    c.verify_pass.map_or(String::new(), |v| v.to_string()),
                    c.baseline_edges.map_or(String::new(), |v| v.to_string()),
                ));
            }
            out
        }
    };
    match &args.out {
        Some(path) => std::fs::write(path, text + "\n")?,
        None => println!("{text}"),
    }
    Ok(())
}

/// Map the swept parameter onto the algorithm's knob.
fn bench_knobs(algo: Algorithm, param: f64) -> Result<(f64, Option<usize>, Option<usize>, f64)> {
    match algo {
        Algorithm::Sss => Ok((param, None, None, 1.0)),
        Algorithm::Kcc => Ok((0.25, Some(param as usize), None, 1.0)),
        Algorithm::Spanner3 | Algorithm::Spanner5 => {
            Ok((0.25, None, Some(param as usize), 1.0))
        }
        Algorithm::Bs => Ok((0.25, Some(3), None, param)),
    }
}

fn bench_verify(
    algo: Algorithm,
    g: &Graph,
    yes: &[Edge],
    k: Option<usize>,
) -> Result<(bool, Option<usize>)> {
    match algo {
        Algorithm::Sss => Ok((check_spanning(yes, g)?.pass, None)),
        Algorithm::Kcc => {
            let k = k.unwrap_or(2);
            let baseline = baseline_sparse_certificate(g, k).len();
            Ok((check_k_certificate(yes, g, k)?.pass, Some(baseline)))
        }
        Algorithm::Spanner3 => Ok((check_stretch(yes, g, 3)?.pass, None)),
        Algorithm::Spanner5 => Ok((check_stretch(yes, g, 5)?.pass, None)),
        Algorithm::Bs => {
            let k = k.unwrap_or(3);
            Ok((check_stretch(yes, g, 2 * k - 1)?.pass, None))
        }
    }
}
