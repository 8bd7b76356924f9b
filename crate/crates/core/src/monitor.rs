//! Which vertex pairs monitor which edges, and MEG-set verification.
//!
//! A pair `{u, v}` monitors an edge `e` when deleting `e` changes the distance
//! between `u` and `v`. Pairs in different components are unreachable before
//! and after any deletion, so they never monitor anything and every question
//! here decomposes per component.
//!
//! Two criteria are provided. [`pair_monitors_edge`] deletes the edge and
//! re-runs BFS. [`monitors_by_counts`] instead checks that every shortest
//! `u`-`v` path runs through `e` using shortest-path counts; it is what the
//! batch operations use.

use std::collections::{BTreeMap, BTreeSet};

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distance::{bfs_counts, dist_without_edge, BfsRow, DistanceOracle};
use crate::graph::{EdgeId, Graph, GraphError};

/// Edge-removal criterion.
pub fn pair_monitors_edge(
    g: &Graph,
    oracle: &DistanceOracle,
    u: usize,
    v: usize,
    e: EdgeId,
) -> Result<bool, GraphError> {
    let after = dist_without_edge(g, e, u, v)?;
    Ok(oracle.dist(u, v) != after)
}

/// Path-count criterion against a full oracle.
pub fn pair_monitors_edge_by_counts(
    g: &Graph,
    oracle: &DistanceOracle,
    u: usize,
    v: usize,
    e: EdgeId,
) -> Result<bool, GraphError> {
    g.edge_index(e)?;
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    Ok(monitors_by_counts(oracle.row(u), oracle.row(v), v, e))
}

/// Path-count criterion on the BFS rows of `u` and `v` (`v` given by index): `dist(u, v)` is finite
/// and `sigma(u, v)` equals the number of shortest paths through `e` in either
/// orientation.
pub fn monitors_by_counts(row_u: &BfsRow, row_v: &BfsRow, v: usize, e: EdgeId) -> bool {
    let Some(total) = row_u.dist[v].finite() else {
        return false;
    };
    let (x, y) = e.endpoints();
    let through = |p: usize, q: usize| -> Option<BigUint> {
        let (dp, dq) = (row_u.dist[p].finite()?, row_v.dist[q].finite()?);
        (dp + 1 + dq == total).then(|| &row_u.sigma[p] * &row_v.sigma[q])
    };
    let sum = match (through(x, y), through(y, x)) {
        (None, None) => return false,
        (Some(a), None) | (None, Some(a)) => a,
        (Some(a), Some(b)) => a + b,
    };
    sum == row_u.sigma[v]
}

/// For every edge, the sorted list of pairs `(u, v)`, `u < v`, monitoring it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairSetPerEdge {
    edges: Vec<EdgeId>,
    pairs: Vec<Vec<(usize, usize)>>,
    order: usize,
}

impl PairSetPerEdge {
    pub fn new(g: &Graph) -> Self {
        let oracle = DistanceOracle::new(g);
        Self::with_oracle(g, &oracle)
    }

    pub fn with_oracle(g: &Graph, oracle: &DistanceOracle) -> Self {
        let n = g.order();
        let pairs = g
            .edges()
            .par_iter()
            .map(|&e| {
                let mut out = Vec::new();
                for u in 0..n {
                    for v in u + 1..n {
                        if monitors_by_counts(oracle.row(u), oracle.row(v), v, e) {
                            out.push((u, v));
                        }
                    }
                }
                out
            })
            .collect();
        PairSetPerEdge { edges: g.edges().to_vec(), pairs, order: n }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    /// Pairs monitoring the `i`-th edge.
    pub fn pairs(&self, i: usize) -> &[(usize, usize)] {
        &self.pairs[i]
    }

    pub fn get(&self, e: EdgeId) -> Option<&[(usize, usize)]> {
        self.edges.binary_search(&e).ok().map(|i| self.pairs[i].as_slice())
    }

    pub fn iter(&self) -> impl Iterator<Item = (EdgeId, &[(usize, usize)])> {
        self.edges.iter().copied().zip(self.pairs.iter().map(Vec::as_slice))
    }
}

/// All pairs monitoring `e`.
pub fn monitoring_pairs(g: &Graph, e: EdgeId) -> Result<BTreeSet<(usize, usize)>, GraphError> {
    g.edge_index(e)?;
    let n = g.order();
    let rows: Vec<BfsRow> = (0..n).into_par_iter().map(|s| bfs_counts(g, s)).collect();
    let mut out = BTreeSet::new();
    for u in 0..n {
        for v in u + 1..n {
            if monitors_by_counts(&rows[u], &rows[v], v, e) {
                out.insert((u, v));
            }
        }
    }
    Ok(out)
}

/// Fast membership tests against precomputed monitoring pairs.
#[derive(Debug, Clone)]
pub struct MegChecker {
    pairs: PairSetPerEdge,
}

impl MegChecker {
    pub fn new(g: &Graph) -> Self {
        MegChecker { pairs: PairSetPerEdge::new(g) }
    }

    pub fn from_pairs(pairs: PairSetPerEdge) -> Self {
        MegChecker { pairs }
    }

    pub fn pairs(&self) -> &PairSetPerEdge {
        &self.pairs
    }

    pub fn order(&self) -> usize {
        self.pairs.order
    }

    pub fn set(&self, vertices: &[usize]) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.order());
        s.extend(vertices.iter().copied());
        s
    }

    pub fn edge_monitored(&self, i: usize, s: &FixedBitSet) -> bool {
        self.pairs.pairs[i].iter().any(|&(a, b)| s.contains(a) && s.contains(b))
    }

    pub fn is_meg(&self, s: &FixedBitSet) -> bool {
        (0..self.pairs.edges.len()).all(|i| self.edge_monitored(i, s))
    }

    /// Indices of edges with no monitoring pair inside `s`.
    pub fn unmonitored(&self, s: &FixedBitSet) -> Vec<usize> {
        (0..self.pairs.edges.len()).filter(|&i| !self.edge_monitored(i, s)).collect()
    }

    pub fn forced_vertices(&self) -> Vec<usize> {
        let n = self.order();
        (0..n)
            .into_par_iter()
            .filter(|&v| {
                let mut s = FixedBitSet::with_capacity(n);
                s.insert_range(..);
                s.set(v, false);
                !self.is_meg(&s)
            })
            .collect()
    }
}

/// Outcome of checking a candidate set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MegVerdict {
    pub is_meg: bool,
    pub unmonitored: Vec<EdgeId>,
    /// For each monitored edge, the lexicographically smallest monitoring pair in the set.
    pub certificate: BTreeMap<EdgeId, (usize, usize)>,
}

/// JSON shape of a [`MegVerdict`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub is_meg: bool,
    pub unmonitored: Vec<[usize; 2]>,
    pub certificate: BTreeMap<String, [usize; 2]>,
}

impl MegVerdict {
    pub fn to_report(&self) -> VerdictReport {
        VerdictReport {
            is_meg: self.is_meg,
            unmonitored: self.unmonitored.iter().map(|e| [e.lo(), e.hi()]).collect(),
            certificate: self
                .certificate
                .iter()
                .map(|(e, &(a, b))| (e.to_string(), [a, b]))
                .collect(),
        }
    }
}

/// Checks whether `s` monitors every edge of `g`.
///
/// Only the BFS rows of members of `s` are computed, so this stays cheap for
/// small sets in large graphs. Panics if a vertex of `s` is out of range.
pub fn is_meg_set(g: &Graph, s: &[usize]) -> MegVerdict {
    let mut members: Vec<usize> = s.to_vec();
    members.sort_unstable();
    members.dedup();
    for &v in &members {
        g.check_vertex(v).expect("candidate vertex in range");
    }
    let rows: Vec<BfsRow> = members.par_iter().map(|&v| bfs_counts(g, v)).collect();
    let found: Vec<Option<(usize, usize)>> = g
        .edges()
        .par_iter()
        .map(|&e| {
            for i in 0..members.len() {
                for j in i + 1..members.len() {
                    if monitors_by_counts(&rows[i], &rows[j], members[j], e) {
                        return Some((members[i], members[j]));
                    }
                }
            }
            None
        })
        .collect();
    let mut unmonitored = Vec::new();
    let mut certificate = BTreeMap::new();
    for (&e, pair) in g.edges().iter().zip(found) {
        match pair {
            Some(p) => {
                certificate.insert(e, p);
            }
            None => unmonitored.push(e),
        }
    }
    MegVerdict { is_meg: unmonitored.is_empty(), unmonitored, certificate }
}

/// Vertices contained in every MEG-set: `v` such that `V \ {v}` is not a MEG-set.
pub fn forced_vertices(g: &Graph) -> Vec<usize> {
    MegChecker::new(g).forced_vertices()
}

/// The unique minimal MEG-set, when one exists. By monotonicity this is the
/// case exactly when the forced vertices already form a MEG-set.
pub fn unique_minimal_meg(g: &Graph) -> Option<Vec<usize>> {
    unique_minimal_with(&MegChecker::new(g))
}

pub fn unique_minimal_with(checker: &MegChecker) -> Option<Vec<usize>> {
    let forced = checker.forced_vertices();
    checker.is_meg(&checker.set(&forced)).then_some(forced)
}
