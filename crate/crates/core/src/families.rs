//! Named graph families and the explicit witness sets that go with them.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::Graph;
use crate::products::{cartesian, strong, ProductKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
}

fn bad(msg: impl Into<String>) -> FamilyError {
    FamilyError::BadParameter(msg.into())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    /// Complete multipartite graph with the given part sizes.
    Multipartite(Vec<usize>),
    /// `P_a □ P_b`
    Grid(usize, usize),
    /// `P_a ⊠ P_b`
    King(usize, usize),
    /// `C_m □ C_m`
    Torus(usize),
    /// `C_m ⊠ C_m`
    ToroidalKing(usize),
    /// The 5-cycle `abcde` with pendant edges `aa'` and `bb'`.
    PendantCycle,
}

impl FamilySpec {
    pub fn tag(&self) -> &'static str {
        match self {
            FamilySpec::Path(_) => "path",
            FamilySpec::Cycle(_) => "cycle",
            FamilySpec::Complete(_) => "complete",
            FamilySpec::Multipartite(_) => "multipartite",
            FamilySpec::Grid(..) => "grid",
            FamilySpec::King(..) => "king",
            FamilySpec::Torus(_) => "torus",
            FamilySpec::ToroidalKing(_) => "toroidal_king",
            FamilySpec::PendantCycle => "pendant_cycle",
        }
    }

    pub fn params(&self) -> Vec<usize> {
        match self {
            FamilySpec::Path(m) | FamilySpec::Cycle(m) | FamilySpec::Complete(m) => vec![*m],
            FamilySpec::Torus(m) | FamilySpec::ToroidalKing(m) => vec![*m],
            FamilySpec::Multipartite(parts) => parts.clone(),
            FamilySpec::Grid(a, b) | FamilySpec::King(a, b) => vec![*a, *b],
            FamilySpec::PendantCycle => vec![],
        }
    }

    /// Builds a spec from a tag and parameters, validating ranges.
    pub fn from_parts(tag: &str, params: &[usize]) -> Result<Self, FamilyError> {
        let one = || match params {
            [m] => Ok(*m),
            _ => Err(bad(format!("`{tag}` takes one parameter"))),
        };
        let two = || match params {
            [a, b] => Ok((*a, *b)),
            _ => Err(bad(format!("`{tag}` takes two parameters"))),
        };
        let spec = match tag {
            "path" => FamilySpec::Path(one()?),
            "cycle" => FamilySpec::Cycle(one()?),
            "complete" => FamilySpec::Complete(one()?),
            "multipartite" => FamilySpec::Multipartite(params.to_vec()),
            "grid" => {
                let (a, b) = two()?;
                FamilySpec::Grid(a, b)
            }
            "king" => {
                let (a, b) = two()?;
                FamilySpec::King(a, b)
            }
            "torus" => FamilySpec::Torus(one()?),
            "toroidal_king" => FamilySpec::ToroidalKing(one()?),
            "pendant_cycle" if params.is_empty() => FamilySpec::PendantCycle,
            "pendant_cycle" => return Err(bad("`pendant_cycle` takes no parameters")),
            other => return Err(FamilyError::UnknownFamily(other.to_string())),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), FamilyError> {
        match *self {
            FamilySpec::Path(m) if m < 1 => Err(bad("path needs m >= 1")),
            FamilySpec::Cycle(m) if m < 3 => Err(bad("cycle needs m >= 3")),
            FamilySpec::Complete(r) if r < 1 => Err(bad("complete graph needs r >= 1")),
            FamilySpec::Multipartite(ref parts) if parts.len() < 2 || parts.contains(&0) => {
                Err(bad("multipartite needs at least two nonempty parts"))
            }
            FamilySpec::Grid(a, b) | FamilySpec::King(a, b) if a < 1 || b < 1 => {
                Err(bad("grid dimensions must be >= 1"))
            }
            FamilySpec::Torus(m) | FamilySpec::ToroidalKing(m) if m < 3 => {
                Err(bad("toroidal families need m >= 3"))
            }
            _ => Ok(()),
        }
    }

    /// Product decomposition for the grid-like families.
    pub fn factors(&self) -> Option<(ProductKind, FamilySpec, FamilySpec)> {
        match *self {
            FamilySpec::Grid(a, b) => Some((ProductKind::Cartesian, FamilySpec::Path(a), FamilySpec::Path(b))),
            FamilySpec::King(a, b) => Some((ProductKind::Strong, FamilySpec::Path(a), FamilySpec::Path(b))),
            FamilySpec::Torus(m) => Some((ProductKind::Cartesian, FamilySpec::Cycle(m), FamilySpec::Cycle(m))),
            FamilySpec::ToroidalKing(m) => {
                Some((ProductKind::Strong, FamilySpec::Cycle(m), FamilySpec::Cycle(m)))
            }
            _ => None,
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())?;
        for p in self.params() {
            write!(f, " {p}")?;
        }
        Ok(())
    }
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    /// Parses `"<tag> <params...>"`, e.g. `"torus 5"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut toks = s.split_whitespace();
        let tag = toks.next().ok_or_else(|| bad("empty family spec"))?;
        let params = toks
            .map(|t| t.parse::<usize>().map_err(|_| bad(format!("`{t}` is not a count"))))
            .collect::<Result<Vec<_>, _>>()?;
        FamilySpec::from_parts(tag, &params)
    }
}

pub fn path(m: usize) -> Graph {
    Graph::new(m, (1..m).map(|i| (i - 1, i))).expect("path")
}

pub fn cycle(m: usize) -> Graph {
    Graph::new(m, (0..m).map(|i| (i, (i + 1) % m))).expect("cycle")
}

pub fn complete(r: usize) -> Graph {
    Graph::new(r, (0..r).flat_map(|a| (a + 1..r).map(move |b| (a, b)))).expect("complete graph")
}

pub fn complete_multipartite(parts: &[usize]) -> Graph {
    let part_of: Vec<usize> = parts.iter().enumerate().flat_map(|(i, &s)| std::iter::repeat_n(i, s)).collect();
    let n = part_of.len();
    let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
    Graph::new(n, edges.filter(|&(a, b)| part_of[a] != part_of[b]).collect::<Vec<_>>())
        .expect("multipartite graph")
}

/// The 5-cycle `a b c d e` (vertices 0..5) with pendants `a'` (5) and `b'` (6).
pub fn pendant_cycle_example() -> Graph {
    let labels = ["a", "b", "c", "d", "e", "a'", "b'"].map(String::from).to_vec();
    Graph::labeled(labels, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (1, 6)])
        .expect("pendant cycle")
}

pub fn generate(spec: &FamilySpec) -> Result<Graph, FamilyError> {
    spec.validate()?;
    let g = match spec {
        FamilySpec::Path(m) => path(*m),
        FamilySpec::Cycle(m) => cycle(*m),
        FamilySpec::Complete(r) => complete(*r),
        FamilySpec::Multipartite(parts) => complete_multipartite(parts),
        FamilySpec::PendantCycle => pendant_cycle_example(),
        grid_like => {
            let (kind, a, b) = grid_like.factors().expect("grid-like family");
            let (a, b) = (generate(&a)?, generate(&b)?);
            let p = match kind {
                ProductKind::Cartesian => cartesian(&a, &b),
                ProductKind::Strong => strong(&a, &b),
            };
            p.expect("nonempty factors").graph
        }
    };
    Ok(g)
}

/// A 3-vertex MEG-set of `C_m`, `m >= 5`: `{0, ⌊m/2⌋, m - 1}` for odd `m`,
/// `{0, m/2 - 1, m - 2}` for even `m` (where `m/2` would be antipodal to 0).
pub fn cycle_triple(m: usize) -> Result<[usize; 3], FamilyError> {
    match m {
        0..=4 => Err(bad("cycle triple needs m >= 5")),
        _ if m % 2 == 1 => Ok([0, m / 2, m - 1]),
        _ => Ok([0, m / 2 - 1, m - 2]),
    }
}

/// The diagonal MEG-set of `C_m □ C_m`: all `(i, j)` with `(i + j) mod m` in
/// [`cycle_triple`], as row-major indices. Every row and column is a rotation
/// of the triple.
pub fn torus_witness(m: usize) -> Result<Vec<usize>, FamilyError> {
    let base = cycle_triple(m).map_err(|_| bad("torus witness needs m >= 5"))?;
    Ok((0..m * m).filter(|&v| base.contains(&((v / m + v % m) % m))).collect())
}

/// Vertices of `C5 ⊠ C5` left out of its 20-vertex MEG-set.
pub fn king_torus_omitted_c5() -> [(usize, usize); 5] {
    [(0, 0), (1, 2), (2, 4), (3, 1), (4, 3)]
}

/// The 20-vertex minimum vertex cover of `C5 ⊠ C5` avoiding
/// [`king_torus_omitted_c5`]. Its diagonal edges are all monitored, but each
/// straight edge is monitored only by its own endpoints, so it is not a MEG-set.
pub fn king_torus_witness_c5() -> Vec<usize> {
    let omitted: Vec<usize> = king_torus_omitted_c5().iter().map(|&(a, b)| a * 5 + b).collect();
    (0..25).filter(|v| !omitted.contains(v)).collect()
}

/// The eight king-move neighbours of `v` in `C5 ⊠ C5`, grouped as four pairs
/// on opposite sides of `v`: two straight pairs, then two diagonal pairs.
pub fn opposing_pairs_c5(v: (usize, usize)) -> [((usize, usize), (usize, usize)); 4] {
    let shift = |(a, b): (usize, usize), (da, db): (usize, usize)| ((a + da) % 5, (b + db) % 5);
    // +1 and -1 (= +4) in each direction
    [(1, 0), (0, 1), (1, 1), (1, 4)].map(|d| (shift(v, d), shift(v, ((5 - d.0) % 5, (5 - d.1) % 5))))
}
