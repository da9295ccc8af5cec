//! graph6 and plain edge-list text formats.
//!
//! graph6 packs the upper triangle of the adjacency matrix, column by column
//! (`x(0,1), x(0,2), x(1,2), x(0,3), ...`), into 6-bit chunks offset by 63,
//! after a size header of one, four or eight bytes.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexLabeling, DEFAULT_MAX_VERTICES};

const HEADER: &str = ">>graph6<<";

pub fn parse_graph6(line: &str) -> Result<Graph> {
    parse_graph6_bounded(line, DEFAULT_MAX_VERTICES)
}

pub fn parse_graph6_bounded(line: &str, max_n: usize) -> Result<Graph> {
    let line = line.strip_prefix(HEADER).unwrap_or(line);
    let bytes = line.as_bytes();
    if bytes.is_empty() {
        return Err(Error::malformed("empty graph6 string"));
    }
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::malformed(format!(
            "byte {b:#04x} outside the graph6 range"
        )));
    }
    let (n, body) = decode_size(bytes)?;
    if n > max_n {
        return Err(Error::malformed(format!(
            "graph has {n} vertices, above the bound {max_n}"
        )));
    }
    let bit_count = n * n.saturating_sub(1) / 2;
    let expected = bit_count.div_ceil(6);
    if body.len() != expected {
        return Err(Error::malformed(format!(
            "expected {expected} data bytes for {n} vertices, found {}",
            body.len()
        )));
    }
    let bit = |k: usize| -> bool { ((body[k / 6] - 63) >> (5 - k % 6)) & 1 == 1 };
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    for pad in bit_count..expected * 6 {
        if bit(pad) {
            return Err(Error::malformed("nonzero padding bits"));
        }
    }
    Ok(g)
}

fn decode_size(bytes: &[u8]) -> Result<(usize, &[u8])> {
    let value = |chunk: &[u8]| chunk.iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
    if bytes[0] != 126 {
        return Ok(((bytes[0] - 63) as usize, &bytes[1..]));
    }
    if bytes.len() >= 2 && bytes[1] == 126 {
        if bytes.len() < 8 {
            return Err(Error::malformed("truncated graph6 size header"));
        }
        let n = value(&bytes[2..8]);
        if n <= 258_047 {
            return Err(Error::malformed("non-minimal graph6 size header"));
        }
        return Ok((n, &bytes[8..]));
    }
    if bytes.len() < 4 {
        return Err(Error::malformed("truncated graph6 size header"));
    }
    let n = value(&bytes[1..4]);
    if n <= 62 {
        return Err(Error::malformed("non-minimal graph6 size header"));
    }
    Ok((n, &bytes[4..]))
}

pub fn write_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

/// A graph read from an edge list, with names when the file used them.
#[derive(Debug, Clone)]
pub struct LabeledGraph {
    pub graph: Graph,
    pub labeling: Option<VertexLabeling>,
}

/// Parses `n m` followed by `m` lines `u v`. Blank lines and `#` comments are
/// skipped. If any endpoint is not a number, every endpoint is treated as a
/// name; names are numbered in order of first appearance.
pub fn parse_edge_list(text: &str, max_n: usize) -> Result<LabeledGraph> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::malformed("edge list is empty"))?;
    let mut head = header.split_whitespace();
    let parse_num = |t: Option<&str>, what: &str| -> Result<usize> {
        t.ok_or_else(|| Error::malformed(format!("missing {what} in header")))?
            .parse::<usize>()
            .map_err(|_| Error::malformed(format!("bad {what} in header '{header}'")))
    };
    let n = parse_num(head.next(), "vertex count")?;
    let m = parse_num(head.next(), "edge count")?;
    if head.next().is_some() {
        return Err(Error::malformed(format!("trailing tokens in header '{header}'")));
    }
    if n > max_n {
        return Err(Error::malformed(format!(
            "graph has {n} vertices, above the bound {max_n}"
        )));
    }
    let mut pairs: Vec<(String, String)> = Vec::with_capacity(m);
    for line in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(Error::malformed(format!("expected 'u v', got '{line}'")));
        }
        pairs.push((toks[0].to_string(), toks[1].to_string()));
    }
    if pairs.len() != m {
        return Err(Error::malformed(format!(
            "header promises {m} edges, found {}",
            pairs.len()
        )));
    }
    let numeric = pairs
        .iter()
        .all(|(a, b)| a.parse::<usize>().is_ok() && b.parse::<usize>().is_ok());
    if numeric {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .map(|(a, b)| (a.parse().unwrap(), b.parse().unwrap()))
            .collect();
        return Ok(LabeledGraph {
            graph: Graph::from_edge_list(n, &edges)?,
            labeling: None,
        });
    }
    let mut names: Vec<String> = Vec::new();
    let mut index = std::collections::HashMap::new();
    let mut edges = Vec::with_capacity(m);
    for (a, b) in &pairs {
        let mut id = |s: &String| -> usize {
            *index.entry(s.clone()).or_insert_with(|| {
                names.push(s.clone());
                names.len() - 1
            })
        };
        let (u, v) = (id(a), id(b));
        edges.push((u, v));
    }
    if names.len() > n {
        return Err(Error::malformed(format!(
            "{} distinct names but header says {n} vertices",
            names.len()
        )));
    }
    let mut k = 0;
    while names.len() < n {
        let candidate = format!("v{k}");
        if !index.contains_key(&candidate) {
            index.insert(candidate.clone(), names.len());
            names.push(candidate);
        }
        k += 1;
    }
    Ok(LabeledGraph {
        graph: Graph::from_edge_list(n, &edges)?,
        labeling: Some(VertexLabeling::new(names)?),
    })
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
