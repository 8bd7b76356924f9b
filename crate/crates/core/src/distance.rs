//! Breadth-first distances, shortest-path counts and edge-deleted queries.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::graph::{EdgeId, Graph, GraphError};

/// Hop count between two vertices. `Unreachable` orders after every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(u32),
    Unreachable,
}

impl Distance {
    pub fn finite(self) -> Option<u32> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Unreachable => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Distance::Finite(_))
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Unreachable => f.write_str("unreachable"),
        }
    }
}

/// Distances and shortest-path counts from a single source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BfsRow {
    pub dist: Vec<Distance>,
    pub sigma: Vec<BigUint>,
}

/// BFS from `source`, counting shortest paths exactly.
pub fn bfs_counts(g: &Graph, source: usize) -> BfsRow {
    let n = g.order();
    let mut dist = vec![Distance::Unreachable; n];
    let mut sigma = vec![BigUint::zero(); n];
    dist[source] = Distance::Finite(0);
    sigma[source] = BigUint::one();
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let Distance::Finite(du) = dist[u] else { unreachable!() };
        for &w in g.neighbors(u) {
            match dist[w] {
                Distance::Unreachable => {
                    dist[w] = Distance::Finite(du + 1);
                    sigma[w] = sigma[u].clone();
                    queue.push_back(w);
                }
                Distance::Finite(dw) if dw == du + 1 => {
                    let add = sigma[u].clone();
                    sigma[w] += add;
                }
                _ => {}
            }
        }
    }
    BfsRow { dist, sigma }
}

/// Plain BFS distances from `source`, optionally ignoring one edge.
pub fn bfs_distances(g: &Graph, source: usize, skip: Option<EdgeId>) -> Vec<Distance> {
    let mut dist = vec![Distance::Unreachable; g.order()];
    dist[source] = Distance::Finite(0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let Distance::Finite(du) = dist[u] else { unreachable!() };
        for &w in g.neighbors(u) {
            if skip.is_some_and(|e| e.contains(u) && e.contains(w)) {
                continue;
            }
            if dist[w] == Distance::Unreachable {
                dist[w] = Distance::Finite(du + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// All-pairs hop counts and shortest-path counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceOracle {
    rows: Vec<BfsRow>,
}

impl DistanceOracle {
    pub fn new(g: &Graph) -> Self {
        let rows = (0..g.order()).into_par_iter().map(|s| bfs_counts(g, s)).collect();
        DistanceOracle { rows }
    }

    pub fn order(&self) -> usize {
        self.rows.len()
    }

    pub fn dist(&self, u: usize, v: usize) -> Distance {
        self.rows[u].dist[v]
    }

    pub fn sigma(&self, u: usize, v: usize) -> &BigUint {
        &self.rows[u].sigma[v]
    }

    pub fn row(&self, u: usize) -> &BfsRow {
        &self.rows[u]
    }
}

/// Computes the [`DistanceOracle`] of `g` by one BFS per vertex.
pub fn apsp(g: &Graph) -> DistanceOracle {
    DistanceOracle::new(g)
}

/// Distance from `u` to `v` once edge `e` is deleted. `g` is not modified.
pub fn dist_without_edge(g: &Graph, e: EdgeId, u: usize, v: usize) -> Result<Distance, GraphError> {
    g.edge_index(e)?;
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    Ok(bfs_distances(g, u, Some(e))[v])
}

/// Diameter, leaf count and connected components.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphMetrics {
    /// Largest finite distance; `None` for the empty graph.
    pub diameter: Option<u32>,
    /// Number of degree-1 vertices.
    pub leaves: usize,
    pub connected: bool,
    /// Components as sorted vertex lists, ordered by smallest vertex.
    pub components: Vec<Vec<usize>>,
}

pub fn components(g: &Graph) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.order()];
    let mut out = Vec::new();
    for s in 0..g.order() {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut i = 0;
        while i < comp.len() {
            let u = comp[i];
            i += 1;
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

pub fn graph_metrics(g: &Graph) -> GraphMetrics {
    let diameter = (0..g.order())
        .into_par_iter()
        .filter_map(|s| bfs_distances(g, s, None).into_iter().filter_map(Distance::finite).max())
        .max();
    let components = components(g);
    GraphMetrics {
        diameter,
        leaves: (0..g.order()).filter(|&v| g.degree(v) == 1).count(),
        connected: components.len() <= 1,
        components,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn path_counts() {
        let o = apsp(&path(3));
        assert_eq!(o.dist(0, 2), Distance::Finite(2));
        assert_eq!(*o.sigma(0, 2), BigUint::one());
    }

    #[test]
    fn four_cycle_has_two_antipodal_routes() {
        let o = apsp(&cycle(4));
        assert_eq!(o.dist(0, 2), Distance::Finite(2));
        assert_eq!(*o.sigma(0, 2), BigUint::from(2u32));
    }

    #[test]
    fn five_cycle_route_is_unique() {
        let o = apsp(&cycle(5));
        assert_eq!(o.dist(0, 2), Distance::Finite(2));
        assert_eq!(*o.sigma(0, 2), BigUint::one());
    }

    #[test]
    fn unreachable_pairs() {
        let g = Graph::new(3, [(0, 1)]).unwrap();
        let o = apsp(&g);
        assert_eq!(o.dist(0, 2), Distance::Unreachable);
        assert!(o.sigma(0, 2).is_zero());
        assert_eq!(*o.sigma(2, 2), BigUint::one());
    }

    #[test]
    fn edge_deleted_distances() {
        let e01 = EdgeId::new(0, 1).unwrap();
        assert_eq!(dist_without_edge(&cycle(4), e01, 0, 1), Ok(Distance::Finite(3)));
        assert_eq!(dist_without_edge(&path(3), e01, 0, 2), Ok(Distance::Unreachable));
        assert_eq!(dist_without_edge(&cycle(5), e01, 0, 2), Ok(Distance::Finite(3)));
        let e02 = EdgeId::new(0, 2).unwrap();
        assert_eq!(
            dist_without_edge(&cycle(4), e02, 0, 1),
            Err(GraphError::UnknownEdge(e02))
        );
    }

    #[test]
    fn metrics() {
        let m = graph_metrics(&path(4));
        assert_eq!((m.diameter, m.leaves, m.connected), (Some(3), 2, true));
        let star = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let m = graph_metrics(&star);
        assert_eq!((m.diameter, m.leaves), (Some(2), 3));
        let split = Graph::new(3, [(0, 2)]).unwrap();
        let m = graph_metrics(&split);
        assert!(!m.connected);
        assert_eq!(m.components, vec![vec![0, 2], vec![1]]);
    }
}
