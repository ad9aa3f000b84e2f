//! Graph interchange formats: graph6 and a plain edge list.
//!
//! The edge list format is a header line `n <count>` followed by one `u v`
//! pair per line. `#` starts a comment, either on its own line or trailing.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest vertex count handled by the graph6 codec (single-byte header).
pub const GRAPH6_MAX_N: usize = 62;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    Graph6,
    EdgeList,
}

impl FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "graph6" | "g6" => Ok(GraphFormat::Graph6),
            "edge_list" | "edge-list" | "edges" => Ok(GraphFormat::EdgeList),
            other => Err(Error::Argument(format!("unknown graph format {other:?}"))),
        }
    }
}

pub fn parse_graph(text: &str, format: GraphFormat) -> Result<Graph> {
    match format {
        GraphFormat::Graph6 => parse_graph6(text),
        GraphFormat::EdgeList => parse_edge_list(text),
    }
}

pub fn emit_graph(g: &Graph, format: GraphFormat) -> Result<String> {
    match format {
        GraphFormat::Graph6 => to_graph6(g),
        GraphFormat::EdgeList => Ok(to_edge_list(g)),
    }
}

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let mut s = text.trim();
    if let Some(rest) = s.strip_prefix(">>graph6<<") {
        s = rest;
    }
    let bytes = s.as_bytes();
    let Some(&first) = bytes.first() else {
        return Err(Error::parse("byte 0", "empty graph6 string"));
    };
    if !(63..=126).contains(&first) {
        return Err(Error::parse(
            "byte 0",
            format!("invalid size byte {first:#04x}"),
        ));
    }
    if first == 126 {
        return Err(Error::parse(
            "byte 0",
            format!("graphs with more than {GRAPH6_MAX_N} vertices are not supported"),
        ));
    }
    let n = (first - 63) as usize;
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    let body = &bytes[1..];
    if body.len() != expected {
        return Err(Error::parse(
            format!("byte {}", 1 + body.len().min(expected)),
            format!(
                "expected {expected} data bytes for n={n}, found {}",
                body.len()
            ),
        ));
    }
    for (i, &b) in body.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Error::parse(
                format!("byte {}", i + 1),
                format!("invalid data byte {b:#04x}"),
            ));
        }
    }
    let bit = |k: usize| -> bool { (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1 };
    let mut edges = Vec::new();
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if bit(k) {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, edges)
}

pub fn to_graph6(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > GRAPH6_MAX_N {
        return Err(Error::Graph(format!(
            "graph6 output supports at most {GRAPH6_MAX_N} vertices"
        )));
    }
    let mut out = String::with_capacity(1 + n * n / 12 + 1);
    out.push((n as u8 + 63) as char);
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = acc << 1 | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((acc << (6 - filled)) + 63) as char);
    }
    Ok(out)
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let at = || format!("line {line_no}");
        match n {
            None => {
                if tokens.len() != 2 || tokens[0] != "n" {
                    return Err(Error::parse(at(), "expected header `n <count>`"));
                }
                n = Some(
                    tokens[1]
                        .parse()
                        .map_err(|_| Error::parse(at(), "vertex count is not an integer"))?,
                );
            }
            Some(_) => {
                if tokens.len() != 2 {
                    return Err(Error::parse(at(), "expected an edge `u v`"));
                }
                let u: usize = tokens[0]
                    .parse()
                    .map_err(|_| Error::parse(at(), "endpoint is not a vertex index"))?;
                let v: usize = tokens[1]
                    .parse()
                    .map_err(|_| Error::parse(at(), "endpoint is not a vertex index"))?;
                edges.push((u, v));
            }
        }
    }
    let n = n.ok_or_else(|| Error::parse("line 1", "missing header `n <count>`"))?;
    Graph::from_edges(n, edges)
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.n());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}
