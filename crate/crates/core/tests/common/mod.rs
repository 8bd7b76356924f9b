//! Brute-force oracles and random corpora shared by the integration tests.
//! Nothing here calls into the monitor or solver modules.

#![allow(dead_code)]

use std::collections::VecDeque;

use meg_core::reduction::CnfFormula;
use meg_core::Graph;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Plain BFS on an adjacency matrix, optionally ignoring one edge.
pub fn bfs(adj: &[Vec<bool>], s: usize, skip: Option<(usize, usize)>) -> Vec<Option<usize>> {
    let n = adj.len();
    let mut dist = vec![None; n];
    dist[s] = Some(0);
    let mut q = VecDeque::from([s]);
    while let Some(x) = q.pop_front() {
        for y in 0..n {
            let skipped = skip.is_some_and(|(a, b)| (a, b) == (x, y) || (b, a) == (x, y));
            if adj[x][y] && !skipped && dist[y].is_none() {
                dist[y] = Some(dist[x].unwrap() + 1);
                q.push_back(y);
            }
        }
    }
    dist
}

pub fn matrix(g: &Graph) -> Vec<Vec<bool>> {
    let mut adj = vec![vec![false; g.order()]; g.order()];
    for e in g.edges() {
        adj[e.lo()][e.hi()] = true;
        adj[e.hi()][e.lo()] = true;
    }
    adj
}

/// For each edge of `g` (in `g.edges()` order), the bitmask over pairs
/// `(u, v)` that monitor it, as a list of pairs.
pub fn monitor_table(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    let adj = matrix(g);
    let n = g.order();
    let base: Vec<_> = (0..n).map(|s| bfs(&adj, s, None)).collect();
    g.edges()
        .iter()
        .map(|e| {
            let mut pairs = Vec::new();
            for u in 0..n {
                let cut = bfs(&adj, u, Some((e.lo(), e.hi())));
                for v in u + 1..n {
                    if base[u][v] != cut[v] {
                        pairs.push((u, v));
                    }
                }
            }
            pairs
        })
        .collect()
}

pub fn mask_is_meg(table: &[Vec<(usize, usize)>], mask: u64) -> bool {
    table.iter().all(|ps| ps.iter().any(|&(u, v)| mask >> u & 1 == 1 && mask >> v & 1 == 1))
}

pub fn mask_to_vec(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

/// All MEG-sets as bitmasks (n ≤ 20).
pub fn all_meg_masks(g: &Graph) -> Vec<u64> {
    let table = monitor_table(g);
    (0..1u64 << g.order()).filter(|&m| mask_is_meg(&table, m)).collect()
}

/// meg(G) and the lexicographically smallest minimum MEG-set, by enumeration.
pub fn brute_meg(g: &Graph) -> (usize, Vec<usize>) {
    let table = monitor_table(g);
    let n = g.order();
    for k in 0..=n {
        let mut best: Option<Vec<usize>> = None;
        for mask in 0..1u64 << n {
            if mask.count_ones() as usize == k && mask_is_meg(&table, mask) {
                let v = mask_to_vec(mask);
                if best.as_ref().is_none_or(|b| v < *b) {
                    best = Some(v);
                }
            }
        }
        if let Some(b) = best {
            return (k, b);
        }
    }
    unreachable!("the whole vertex set is a MEG-set")
}

pub fn brute_sat(f: &CnfFormula) -> Option<Vec<bool>> {
    let m = f.num_vars();
    (0..1u64 << m).map(|i| (0..m).map(|v| i >> v & 1 == 1).collect::<Vec<bool>>()).find(|a| f.satisfied_by(a))
}

pub fn brute_vertex_cover(g: &Graph) -> usize {
    (0..1u64 << g.order())
        .filter(|&m| g.edges().iter().all(|e| m >> e.lo() & 1 == 1 || m >> e.hi() & 1 == 1))
        .map(|m| m.count_ones() as usize)
        .min()
        .unwrap()
}

pub fn gnp(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

pub fn random_tree(rng: &mut impl Rng, n: usize) -> Graph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let edges = (1..n).map(|i| (order[rng.gen_range(0..i)], order[i]));
    Graph::new(n, edges).unwrap()
}

pub fn random_connected(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let tree = random_tree(rng, n);
    let mut edges: Vec<(usize, usize)> = tree.edges().iter().map(|e| e.endpoints()).collect();
    for a in 0..n {
        for b in a + 1..n {
            if !tree.has_edge(a, b) && rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

/// Every connected graph on `n ≤ 5` vertices, up to labelled duplicates.
pub fn all_connected(n: usize) -> Vec<Graph> {
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    (0..1u32 << slots.len())
        .map(|m| Graph::new(n, slots.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &e)| e)).unwrap())
        .filter(|g| {
            let adj = matrix(g);
            n == 0 || bfs(&adj, 0, None).iter().all(Option::is_some)
        })
        .collect()
}

pub fn leaves(g: &Graph) -> usize {
    (0..g.order()).filter(|&v| g.degree(v) == 1).count()
}
