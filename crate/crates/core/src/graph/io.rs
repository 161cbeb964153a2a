//! Edge-list text format and the structured (JSON) graph document.
//!
//! Text format: a header line `n m`, then exactly `m` lines `u v`.
//! Blank lines are ignored; line numbers in errors count every line.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Graph, GraphError, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: self-loop at vertex {vertex}")]
    Loop { line: usize, vertex: Vertex },
    #[error("line {line}: duplicate edge {{{u}, {v}}}")]
    Duplicate { line: usize, u: Vertex, v: Vertex },
    #[error("line {line}: vertex {vertex} out of range (n = {n})")]
    OutOfRange { line: usize, vertex: Vertex, n: usize },
    #[error("expected {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("invalid graph document: {0}")]
    Document(String),
}

fn parse_pair(text: &str, line: usize) -> Result<(usize, usize), ParseError> {
    let mut it = text.split_whitespace();
    let mut next = |what: &str| -> Result<usize, ParseError> {
        let tok = it.next().ok_or_else(|| ParseError::Malformed {
            line,
            msg: format!("missing {what}"),
        })?;
        tok.parse().map_err(|_| ParseError::Malformed {
            line,
            msg: format!("`{tok}` is not a non-negative integer"),
        })
    };
    let a = next("first field")?;
    let b = next("second field")?;
    if let Some(extra) = it.next() {
        return Err(ParseError::Malformed {
            line,
            msg: format!("unexpected trailing field `{extra}`"),
        });
    }
    Ok((a, b))
}

/// Parses the edge-list text format.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or(ParseError::Malformed {
        line: 1,
        msg: "missing header `n m`".into(),
    })?;
    let (n, m) = parse_pair(header, hline)?;

    let mut seen = std::collections::HashSet::with_capacity(m);
    let mut edges = Vec::with_capacity(m);
    for (line, body) in lines {
        if edges.len() == m {
            return Err(ParseError::Malformed {
                line,
                msg: format!("more than the {m} declared edges"),
            });
        }
        let (u, v) = parse_pair(body, line)?;
        for vertex in [u, v] {
            if vertex >= n {
                return Err(ParseError::OutOfRange { line, vertex, n });
            }
        }
        if u == v {
            return Err(ParseError::Loop { line, vertex: u });
        }
        let key = (u.min(v), u.max(v));
        if !seen.insert(key) {
            return Err(ParseError::Duplicate {
                line,
                u: key.0,
                v: key.1,
            });
        }
        edges.push(key);
    }
    if edges.len() != m {
        return Err(ParseError::EdgeCount {
            expected: m,
            found: edges.len(),
        });
    }
    Ok(Graph::from_edges(n, edges).expect("validated above"))
}

/// Writes the canonical edge-list text.
pub fn write_graph(g: &Graph) -> String {
    let mut out = String::with_capacity(8 * (g.m() + 1));
    writeln!(out, "{} {}", g.n(), g.m()).unwrap();
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// Structured graph document: vertex count, canonical edges, and optional
/// names for distinguished vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub n: usize,
    pub edges: Vec<[Vertex; 2]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub names: BTreeMap<String, Vertex>,
}

impl GraphDoc {
    pub fn from_graph(g: &Graph) -> Self {
        GraphDoc {
            n: g.n(),
            edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
            names: BTreeMap::new(),
        }
    }

    pub fn to_graph(&self) -> Result<Graph, GraphError> {
        let g = Graph::from_edges(self.n, self.edges.iter().map(|e| (e[0], e[1])))?;
        if let Some((_, &v)) = self.names.iter().find(|(_, &v)| v >= self.n) {
            return Err(GraphError::OutOfRange { vertex: v, n: self.n });
        }
        Ok(g)
    }
}

/// Reads either format: JSON when the first non-blank character is `{`.
pub fn read_any(text: &str) -> Result<Graph, ParseError> {
    if text.trim_start().starts_with('{') {
        let doc: GraphDoc =
            serde_json::from_str(text).map_err(|e| ParseError::Document(e.to_string()))?;
        doc.to_graph()
            .map_err(|e| ParseError::Document(e.to_string()))
    } else {
        parse_graph(text)
    }
}
