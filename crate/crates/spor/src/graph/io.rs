//! Graph file formats.
//!
//! Text: first line `n m`, then `m` lines `u v` with `u < v`, ASCII decimal,
//! newline-terminated. Binary: magic `SPOR1`, little-endian 64-bit `n` and
//! `m`, the `n + 1` offsets, then the `2m` neighbor entries — a verbatim dump
//! of the compressed adjacency layout for large benchmarks.

use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use super::{Graph, NodeId};
use crate::error::{Error, Result};

const MAGIC: &[u8; 5] = b"SPOR1";

pub fn write_text<W: Write>(g: &Graph, out: W) -> Result<()> {
    let mut w = BufWriter::new(out);
    writeln!(w, "{} {}", g.node_count(), g.edge_count())?;
    for e in g.edges() {
        writeln!(w, "{} {}", e.u(), e.v())?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_text<R: Read>(input: R) -> Result<Graph> {
    let mut lines = BufReader::new(input).lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty graph file".into()))??;
    let mut parts = header.split_whitespace();
    let n: usize = parse_field(parts.next(), "n")?;
    let m: usize = parse_field(parts.next(), "m")?;
    let mut edges = Vec::with_capacity(m);
    for line in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let u: NodeId = parse_field(parts.next(), "u")?;
        let v: NodeId = parse_field(parts.next(), "v")?;
        if u >= v {
            return Err(Error::Parse(format!("edge line '{line}' must satisfy u < v")));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(Error::Parse(format!(
            "header declares {m} edges, file has {}",
            edges.len()
        )));
    }
    Graph::from_edge_list(n, &edges)
}

fn parse_field<T: std::str::FromStr>(field: Option<&str>, name: &str) -> Result<T> {
    field
        .ok_or_else(|| Error::Parse(format!("missing field {name}")))?
        .parse()
        .map_err(|_| Error::Parse(format!("bad field {name}")))
}

pub fn write_binary<W: Write>(g: &Graph, out: W) -> Result<()> {
    let mut w = BufWriter::new(out);
    w.write_all(MAGIC)?;
    w.write_all(&(g.node_count() as u64).to_le_bytes())?;
    w.write_all(&(g.edge_count() as u64).to_le_bytes())?;
    let mut acc = 0u64;
    w.write_all(&acc.to_le_bytes())?;
    for v in 0..g.node_count() as NodeId {
        acc += g.degree(v) as u64;
        w.write_all(&acc.to_le_bytes())?;
    }
    for v in 0..g.node_count() as NodeId {
        for &w_id in g.neighbors(v) {
            w.write_all(&u64::from(w_id).to_le_bytes())?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn read_binary<R: Read>(input: R) -> Result<Graph> {
    let mut r = BufReader::new(input);
    let mut magic = [0u8; 5];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(Error::Parse("bad magic; not a SPOR1 binary graph".into()));
    }
    let n = read_u64(&mut r)? as usize;
    let m = read_u64(&mut r)? as usize;
    let mut offsets = Vec::with_capacity(n + 1);
    for _ in 0..=n {
        offsets.push(read_u64(&mut r)? as usize);
    }
    if offsets.first() != Some(&0) || offsets.last() != Some(&(2 * m)) {
        return Err(Error::Parse("offset array inconsistent with edge count".into()));
    }
    let mut edges = Vec::with_capacity(m);
    for v in 0..n {
        for _ in offsets[v]..offsets[v + 1] {
            let w = read_u64(&mut r)? as NodeId;
            if w > v as NodeId {
                edges.push((v as NodeId, w));
            }
        }
    }
    Graph::from_edge_list(n, &edges)
}

fn read_u64<R: Read>(r: &mut R) -> Result<u64> {
    let mut buf = [0u8; 8];
    r.read_exact(&mut buf)?;
    Ok(u64::from_le_bytes(buf))
}

/// Read a graph file, sniffing the binary magic and falling back to text.
pub fn read_graph(path: &Path) -> Result<Graph> {
    let bytes = std::fs::read(path)?;
    if bytes.starts_with(MAGIC) {
        read_binary(&bytes[..])
    } else {
        read_text(&bytes[..])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::gen_gnp;
    use crate::rng::Rng;

    #[test]
    fn text_round_trip() {
        let g = gen_gnp(40, 0.2, &mut Rng::new(2)).unwrap();
        let mut buf = Vec::new();
        write_text(&g, &mut buf).unwrap();
        let back = read_text(&buf[..]).unwrap();
        assert_eq!(g, back);
    }

    #[test]
    fn binary_round_trip() {
        let g = gen_gnp(64, 0.3, &mut Rng::new(9)).unwrap();
        let mut buf = Vec::new();
        write_binary(&g, &mut buf).unwrap();
        let back = read_binary(&buf[..]).unwrap();
        assert_eq!(g, back);
    }

    #[test]
    fn text_rejects_misordered_edge() {
        let input = "2 1\n1 0\n";
        assert!(matches!(read_text(input.as_bytes()), Err(Error::Parse(_))));
    }

    #[test]
    fn text_rejects_wrong_edge_count() {
        let input = "3 2\n0 1\n";
        assert!(matches!(read_text(input.as_bytes()), Err(Error::Parse(_))));
    }
}
