//! DIMACS-style edge files.
//!
//! ```text
//! c provenance torus 5
//! p edge 4 3
//! l 1 a
//! e 1 2
//! e 2 3
//! e 3 4
//! ```
//!
//! Vertices are 1-based on disk. Lines may appear in any order; `c` lines are
//! comments, except `c provenance <text>` which records how the graph was
//! generated. [`write_graph`] emits the canonical form: provenance, header,
//! labels by vertex, edges sorted.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseGraphError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing `p edge <n> <m>` header")]
    MissingHeader,
    #[error("header announces {expected} edges but {found} were listed")]
    EdgeCount { expected: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A graph together with the provenance tag found in its file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: Graph,
    pub provenance: Option<String>,
}

const PROVENANCE: &str = "provenance";

fn syntax(line: usize, message: impl Into<String>) -> ParseGraphError {
    ParseGraphError::Syntax { line, message: message.into() }
}

fn vertex(tok: Option<&str>, line: usize, n: Option<usize>) -> Result<usize, ParseGraphError> {
    let tok = tok.ok_or_else(|| syntax(line, "missing vertex"))?;
    let v: usize = tok.parse().map_err(|_| syntax(line, format!("bad vertex `{tok}`")))?;
    if v == 0 {
        return Err(syntax(line, "vertices are 1-based"));
    }
    if let Some(n) = n {
        if v > n {
            return Err(syntax(line, format!("vertex {v} exceeds n = {n}")));
        }
    }
    Ok(v - 1)
}

pub fn read_graph(text: &str) -> Result<GraphFile, ParseGraphError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut labels = Vec::new();
    let mut provenance = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        let mut toks = trimmed.split_whitespace();
        match toks.next() {
            None => {}
            Some("c") => {
                if toks.next() == Some(PROVENANCE) {
                    let rest = trimmed[1..].trim_start()[PROVENANCE.len()..].trim();
                    provenance = Some(rest.to_string());
                }
            }
            Some("p") => {
                if header.is_some() {
                    return Err(syntax(line, "second header"));
                }
                if toks.next() != Some("edge") {
                    return Err(syntax(line, "expected `p edge <n> <m>`"));
                }
                let mut num = |what| -> Result<usize, ParseGraphError> {
                    toks.next()
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| syntax(line, format!("bad {what} in header")))
                };
                header = Some((num("vertex count")?, num("edge count")?));
            }
            Some("e") => {
                let a = vertex(toks.next(), line, None)?;
                let b = vertex(toks.next(), line, None)?;
                if toks.next().is_some() {
                    return Err(syntax(line, "trailing tokens after edge"));
                }
                edges.push((line, a, b));
            }
            Some("l") => {
                let v = vertex(toks.next(), line, None)?;
                // label = everything after the vertex token
                let after_l = trimmed[1..].trim_start();
                let text = after_l[after_l.find(char::is_whitespace).unwrap_or(after_l.len())..].trim();
                if text.is_empty() {
                    return Err(syntax(line, "empty label"));
                }
                labels.push((line, v, text.to_string()));
            }
            Some(other) => return Err(syntax(line, format!("unknown line type `{other}`"))),
        }
    }
    let (n, m) = header.ok_or(ParseGraphError::MissingHeader)?;
    for &(line, a, b) in &edges {
        if a >= n || b >= n {
            return Err(syntax(line, format!("vertex {} exceeds n = {n}", a.max(b) + 1)));
        }
    }
    if edges.len() != m {
        return Err(ParseGraphError::EdgeCount { expected: m, found: edges.len() });
    }
    let mut label_vec = vec![None; n];
    for (line, v, text) in labels {
        if v >= n {
            return Err(syntax(line, format!("vertex {} exceeds n = {n}", v + 1)));
        }
        if label_vec[v].replace(text).is_some() {
            return Err(syntax(line, format!("vertex {} labeled twice", v + 1)));
        }
    }
    let graph = Graph::with_labels(n, edges.into_iter().map(|(_, a, b)| (a, b)), Some(label_vec))?;
    Ok(GraphFile { graph, provenance })
}

pub fn write_graph(g: &Graph, provenance: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(p) = provenance {
        writeln!(out, "c {PROVENANCE} {p}").unwrap();
    }
    writeln!(out, "p edge {} {}", g.order(), g.size()).unwrap();
    for v in 0..g.order() {
        if let Some(l) = g.label(v) {
            writeln!(out, "l {} {}", v + 1, l).unwrap();
        }
    }
    for e in g.edges() {
        writeln!(out, "e {} {}", e.lo() + 1, e.hi() + 1).unwrap();
    }
    out
}

impl GraphFile {
    pub fn to_text(&self) -> String {
        write_graph(&self.graph, self.provenance.as_deref())
    }
}
