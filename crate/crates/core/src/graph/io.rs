//! DIMACS `.col`, graph6 and edge-list JSON.

use super::{Graph, GraphError};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: malformed problem line `{text}`")]
    MalformedHeader { line: usize, text: String },
    #[error("missing `p edge n m` problem line")]
    MissingHeader,
    #[error("line {line}: malformed edge line `{text}`")]
    MalformedEdge { line: usize, text: String },
    #[error("line {line}: vertex {vertex} out of range 1..={order}")]
    IndexOutOfRange {
        line: usize,
        vertex: usize,
        order: usize,
    },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("declared {declared} edges, found {found}")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error("graph6: {0}")]
    Graph6(String),
    #[error("edge list: {0}")]
    EdgeList(String),
}

#[derive(Debug, Clone, Copy, Default)]
pub struct DimacsOptions {
    /// Treat a declared/actual edge-count disagreement as an error instead
    /// of a warning.
    pub strict_edge_count: bool,
}

#[derive(Debug, Clone)]
pub struct ParsedDimacs {
    pub graph: Graph,
    pub warnings: Vec<String>,
}

/// Lenient DIMACS parse; edge-count mismatches are dropped as warnings.
pub fn parse_dimacs(text: &str) -> Result<Graph, ParseError> {
    parse_dimacs_with(text, DimacsOptions::default()).map(|p| p.graph)
}

pub fn parse_dimacs_with(text: &str, opts: DimacsOptions) -> Result<ParsedDimacs, ParseError> {
    let mut graph: Option<Graph> = None;
    let mut declared = 0;
    let mut edge_lines = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut fields = raw.split_whitespace();
        match fields.next() {
            None | Some("c") => {}
            Some("p") => {
                let kind = fields.next();
                let n = fields.next().and_then(|s| s.parse::<usize>().ok());
                let m = fields.next().and_then(|s| s.parse::<usize>().ok());
                match (kind, n, m, graph.is_some()) {
                    (Some("edge" | "col"), Some(n), Some(m), false) => {
                        graph = Some(Graph::empty(n));
                        declared = m;
                    }
                    _ => {
                        return Err(ParseError::MalformedHeader {
                            line,
                            text: raw.to_string(),
                        })
                    }
                }
            }
            Some("e") => {
                let g = graph.as_mut().ok_or(ParseError::MissingHeader)?;
                let ends: Vec<_> = fields.map(str::parse::<usize>).collect();
                let (u, v) = match ends.as_slice() {
                    [Ok(u), Ok(v)] => (*u, *v),
                    _ => {
                        return Err(ParseError::MalformedEdge {
                            line,
                            text: raw.to_string(),
                        })
                    }
                };
                let order = g.order();
                for vertex in [u, v] {
                    if vertex == 0 || vertex > order {
                        return Err(ParseError::IndexOutOfRange {
                            line,
                            vertex,
                            order,
                        });
                    }
                }
                g.add_edge(u - 1, v - 1).map_err(|e| match e {
                    GraphError::SelfLoop(_) => ParseError::SelfLoop { line, vertex: u },
                    GraphError::VertexOutOfRange { vertex, order } => {
                        ParseError::IndexOutOfRange { line, vertex, order }
                    }
                })?;
                edge_lines += 1;
            }
            Some(_) => {
                return Err(ParseError::MalformedEdge {
                    line,
                    text: raw.to_string(),
                })
            }
        }
    }
    let graph = graph.ok_or(ParseError::MissingHeader)?;
    let mut warnings = Vec::new();
    // Some writers list every edge in both directions, so either count is accepted.
    if declared != edge_lines && declared != graph.edge_count() {
        if opts.strict_edge_count {
            return Err(ParseError::EdgeCountMismatch {
                declared,
                found: graph.edge_count(),
            });
        }
        warnings.push(format!(
            "declared {declared} edges, found {} distinct",
            graph.edge_count()
        ));
    }
    Ok(ParsedDimacs { graph, warnings })
}

pub fn to_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.order(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

const G6_BIAS: u8 = 63;

fn g6_order(bytes: &[u8]) -> Result<(usize, usize), ParseError> {
    let err = || ParseError::Graph6("truncated order prefix".into());
    let val = |b: &[u8]| -> Result<usize, ParseError> {
        b.iter().try_fold(0usize, |acc, &c| {
            if (63..=126).contains(&c) {
                Ok((acc << 6) | (c - G6_BIAS) as usize)
            } else {
                Err(ParseError::Graph6(format!("invalid character {:?}", c as char)))
            }
        })
    };
    match bytes {
        [126, 126, rest @ ..] => Ok((val(rest.get(..6).ok_or_else(err)?)?, 8)),
        [126, rest @ ..] => Ok((val(rest.get(..3).ok_or_else(err)?)?, 4)),
        [c, ..] => Ok((val(&[*c])?, 1)),
        [] => Err(ParseError::Graph6("empty code".into())),
    }
}

/// Decodes one graph6 line (an optional `>>graph6<<` header is skipped).
pub fn parse_graph6(line: &str) -> Result<Graph, ParseError> {
    let line = line.trim_end_matches(['\n', '\r']);
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = line.as_bytes();
    let (n, start) = g6_order(bytes)?;
    let body = &bytes[start..];
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(ParseError::Graph6(format!(
            "order {n} needs {expected} data characters, found {}",
            body.len()
        )));
    }
    let mut data = Vec::with_capacity(body.len());
    for &c in body {
        if !(63..=126).contains(&c) {
            return Err(ParseError::Graph6(format!("invalid character {:?}", c as char)));
        }
        data.push(c - G6_BIAS);
    }
    let bit = |k: usize| data[k / 6] & (1 << (5 - k % 6)) != 0;
    if (bits..expected * 6).any(bit) {
        return Err(ParseError::Graph6("nonzero padding bits".into()));
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                g.add_edge(i, j).expect("in range");
            }
            k += 1;
        }
    }
    Ok(g)
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::new();
    let push6 = |out: &mut Vec<u8>, v: usize, chars: usize| {
        for i in (0..chars).rev() {
            out.push(((v >> (6 * i)) & 63) as u8 + G6_BIAS);
        }
    };
    if n <= 62 {
        push6(&mut out, n, 1);
    } else if n <= 258_047 {
        out.push(126);
        push6(&mut out, n, 3);
    } else {
        out.extend([126, 126]);
        push6(&mut out, n, 6);
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.adjacent(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + G6_BIAS);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + G6_BIAS);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

/// Decodes a graph6 fixture: one code per line, blank lines skipped.
pub fn read_graph6_lines(text: &str) -> Result<Vec<Graph>, ParseError> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(parse_graph6)
        .collect()
}

/// `{"n": int, "edges": [[u,v],...]}`, 0-indexed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeListJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&Graph> for EdgeListJson {
    fn from(g: &Graph) -> Self {
        Self {
            n: g.order(),
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl TryFrom<EdgeListJson> for Graph {
    type Error = ParseError;

    fn try_from(value: EdgeListJson) -> Result<Self, Self::Error> {
        Graph::from_edges(value.n, value.edges.into_iter().map(|[u, v]| (u, v)))
            .map_err(|e| ParseError::EdgeList(e.to_string()))
    }
}
