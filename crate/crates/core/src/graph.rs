//! Immutable simple undirected graphs.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors raised while building or querying a [`Graph`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("duplicate edge {0}")]
    DuplicateEdge(EdgeId),
    #[error("vertex index {index} out of range for a graph on {n} vertices")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("{0} is not an edge of the graph")]
    UnknownEdge(EdgeId),
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
}

/// An undirected edge stored as `(min endpoint, max endpoint)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeId {
    lo: usize,
    hi: usize,
}

impl EdgeId {
    /// Canonicalizes the pair; fails on loops.
    pub fn new(a: usize, b: usize) -> Result<Self, GraphError> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Ok(EdgeId { lo: a, hi: b }),
            std::cmp::Ordering::Greater => Ok(EdgeId { lo: b, hi: a }),
            std::cmp::Ordering::Equal => Err(GraphError::LoopEdge(a)),
        }
    }

    pub fn lo(&self) -> usize {
        self.lo
    }

    pub fn hi(&self) -> usize {
        self.hi
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.lo, self.hi)
    }

    pub fn contains(&self, v: usize) -> bool {
        self.lo == v || self.hi == v
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.lo, self.hi)
    }
}

/// A finite simple undirected graph on vertices `0..n`.
///
/// Edges are kept sorted by their canonical pair and adjacency lists are
/// sorted ascending, so iteration order is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<EdgeId>,
    adj: Vec<Vec<usize>>,
    labels: Vec<Option<String>>,
}

impl Graph {
    /// Validates and builds a graph.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        Self::with_labels(n, edges, None)
    }

    /// Like [`Graph::new`], with one optional label per vertex.
    pub fn with_labels(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        labels: Option<Vec<Option<String>>>,
    ) -> Result<Self, GraphError> {
        let mut canon = Vec::new();
        for (a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(GraphError::IndexOutOfRange { index: v, n });
                }
            }
            canon.push(EdgeId::new(a, b)?);
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0]));
        }
        let labels = match labels {
            Some(l) if l.len() != n => {
                return Err(GraphError::LabelCount { expected: n, got: l.len() })
            }
            Some(l) => l,
            None => vec![None; n],
        };
        let mut adj = vec![Vec::new(); n];
        for e in &canon {
            adj[e.lo].push(e.hi);
            adj[e.hi].push(e.lo);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { n, edges: canon, adj, labels })
    }

    /// Builds a graph with every vertex labeled.
    pub fn labeled(
        labels: Vec<String>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let n = labels.len();
        Self::with_labels(n, edges, Some(labels.into_iter().map(Some).collect()))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && self.adj[a].binary_search(&b).is_ok()
    }

    /// Position of `e` in [`Graph::edges`].
    pub fn edge_index(&self, e: EdgeId) -> Result<usize, GraphError> {
        self.edges.binary_search(&e).map_err(|_| GraphError::UnknownEdge(e))
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels[v].as_deref()
    }

    pub fn labels(&self) -> &[Option<String>] {
        &self.labels
    }

    /// The label when present, otherwise the decimal index.
    pub fn display_name(&self, v: usize) -> String {
        match &self.labels[v] {
            Some(l) => l.clone(),
            None => v.to_string(),
        }
    }

    /// Finds a vertex by its label.
    pub fn vertex_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l.as_deref() == Some(label))
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::IndexOutOfRange { index: v, n: self.n })
        }
    }

    /// The subgraph induced by `vertices`, renumbered in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| pos[e.lo] != usize::MAX && pos[e.hi] != usize::MAX)
            .map(|e| (pos[e.lo], pos[e.hi]));
        let labels = vertices.iter().map(|&v| self.labels[v].clone()).collect();
        Graph::with_labels(vertices.len(), edges, Some(labels)).expect("induced subgraph is simple")
    }

    /// Relabels vertex `v` as `perm[v]`. Labels travel with their vertices.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length");
        let edges = self.edges.iter().map(|e| (perm[e.lo], perm[e.hi]));
        let mut labels = vec![None; self.n];
        for (v, &p) in perm.iter().enumerate() {
            labels[p] = self.labels[v].clone();
        }
        Graph::with_labels(self.n, edges, Some(labels)).expect("permutation of a simple graph")
    }

    /// Same vertices and edges, labels dropped.
    pub fn unlabeled(&self) -> Graph {
        Graph { labels: vec![None; self.n], ..self.clone() }
    }

    pub fn same_structure(&self, other: &Graph) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}
