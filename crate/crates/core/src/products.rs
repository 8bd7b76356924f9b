//! Cartesian and strong products, slices and join-sets.
//!
//! Product vertex `(a, b)` has index `a * |H| + b` (row-major) and label
//! `"(la,lb)"`, where a factor vertex without a label contributes its index.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::monitor::{is_meg_set, unique_minimal_meg};
use crate::solver::{meg_min, SearchBudget, SolveError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProductError {
    #[error("product factors must be nonempty")]
    EmptyFactor,
    #[error("need {needed} product operators for {factors} factors, got {got}")]
    OperatorCount { factors: usize, needed: usize, got: usize },
    #[error("unknown product kind `{0}`")]
    UnknownKind(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProductKind {
    Cartesian,
    Strong,
}

impl fmt::Display for ProductKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProductKind::Cartesian => "cartesian",
            ProductKind::Strong => "strong",
        })
    }
}

impl FromStr for ProductKind {
    type Err = ProductError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cartesian" | "box" => Ok(ProductKind::Cartesian),
            "strong" | "king" => Ok(ProductKind::Strong),
            other => Err(ProductError::UnknownKind(other.to_string())),
        }
    }
}

/// A product graph with its factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductGraph {
    pub graph: Graph,
    pub kind: ProductKind,
    pub left: Graph,
    pub right: Graph,
}

impl ProductGraph {
    pub fn index(&self, a: usize, b: usize) -> usize {
        a * self.right.order() + b
    }

    pub fn coords(&self, v: usize) -> (usize, usize) {
        (v / self.right.order(), v % self.right.order())
    }

    pub fn join_set(&self, s: &[usize], t: &[usize]) -> Vec<usize> {
        join_set(self.left.order(), self.right.order(), s, t)
    }

    pub fn slices(&self, s: &[usize]) -> SliceView {
        slices(self.left.order(), self.right.order(), s)
    }
}

fn product(g: &Graph, h: &Graph, kind: ProductKind) -> Result<ProductGraph, ProductError> {
    if g.order() == 0 || h.order() == 0 {
        return Err(ProductError::EmptyFactor);
    }
    let nh = h.order();
    let idx = |a: usize, b: usize| a * nh + b;
    let mut edges = Vec::new();
    for a in 0..g.order() {
        for e in h.edges() {
            edges.push((idx(a, e.lo()), idx(a, e.hi())));
        }
    }
    for e in g.edges() {
        for b in 0..nh {
            edges.push((idx(e.lo(), b), idx(e.hi(), b)));
        }
        if kind == ProductKind::Strong {
            for f in h.edges() {
                edges.push((idx(e.lo(), f.lo()), idx(e.hi(), f.hi())));
                edges.push((idx(e.lo(), f.hi()), idx(e.hi(), f.lo())));
            }
        }
    }
    let labels = (0..g.order())
        .flat_map(|a| (0..nh).map(move |b| (a, b)))
        .map(|(a, b)| format!("({},{})", g.display_name(a), h.display_name(b)))
        .collect();
    let graph = Graph::labeled(labels, edges).expect("product of simple graphs is simple");
    Ok(ProductGraph { graph, kind, left: g.clone(), right: h.clone() })
}

/// G □ H: `(a,b) ~ (c,d)` iff one coordinate is equal and the other adjacent.
pub fn cartesian(g: &Graph, h: &Graph) -> Result<ProductGraph, ProductError> {
    product(g, h, ProductKind::Cartesian)
}

/// G ⊠ H: the Cartesian edges plus all pairs adjacent in both coordinates.
pub fn strong(g: &Graph, h: &Graph) -> Result<ProductGraph, ProductError> {
    product(g, h, ProductKind::Strong)
}

pub fn product_of(kind: ProductKind, g: &Graph, h: &Graph) -> Result<ProductGraph, ProductError> {
    product(g, h, kind)
}

/// Left fold of binary products: `((F0 op0 F1) op1 F2) ...`.
pub fn fold_products(factors: &[Graph], ops: &[ProductKind]) -> Result<Graph, ProductError> {
    let needed = factors.len().saturating_sub(1);
    if factors.is_empty() {
        return Err(ProductError::EmptyFactor);
    }
    if ops.len() != needed {
        return Err(ProductError::OperatorCount { factors: factors.len(), needed, got: ops.len() });
    }
    let mut acc = factors[0].clone();
    for (f, &op) in factors[1..].iter().zip(ops) {
        acc = product(&acc, f, op)?.graph;
    }
    Ok(acc)
}

/// `S ∨ T = {(a, b) : a ∈ S or b ∈ T}` as sorted product indices.
pub fn join_set(g_order: usize, h_order: usize, s: &[usize], t: &[usize]) -> Vec<usize> {
    let mut in_s = vec![false; g_order];
    s.iter().for_each(|&a| in_s[a] = true);
    let mut in_t = vec![false; h_order];
    t.iter().for_each(|&b| in_t[b] = true);
    (0..g_order)
        .flat_map(|a| (0..h_order).map(move |b| (a, b)))
        .filter(|&(a, b)| in_s[a] || in_t[b])
        .map(|(a, b)| a * h_order + b)
        .collect()
}

/// Row and column restrictions of a product vertex set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SliceView {
    /// `rows[x]` = `{v ∈ V(H) : (x, v) ∈ S}`
    pub rows: Vec<Vec<usize>>,
    /// `cols[y]` = `{v ∈ V(G) : (v, y) ∈ S}`
    pub cols: Vec<Vec<usize>>,
}

pub fn slices(g_order: usize, h_order: usize, s: &[usize]) -> SliceView {
    let mut sorted = s.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut rows = vec![Vec::new(); g_order];
    let mut cols = vec![Vec::new(); h_order];
    for v in sorted {
        let (a, b) = (v / h_order, v % h_order);
        rows[a].push(b);
        cols[b].push(a);
    }
    SliceView { rows, cols }
}

/// Where a reported product value came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Exact search on the product itself.
    Solved,
    /// Cartesian product with a factor that has a unique minimal MEG-set: the
    /// value equals the upper bound.
    Theorem,
    /// Only the interval is known.
    Bounds,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductValue {
    pub value: Option<usize>,
    pub lower: usize,
    pub upper: usize,
    pub provenance: Provenance,
}

/// Product bounds from the factors' meg values, with solved values when the
/// budget allows.
///
/// `lower` and `upper` bound the Cartesian product. The strong product can
/// exceed `upper`: in `P3 ⊠ P3` the edge between `(0,1)` and `(1,1)` is
/// bypassed by the diagonal route through `(1,0)`, so meg is 9, not 8.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub g_order: usize,
    pub h_order: usize,
    pub meg_g: usize,
    pub meg_h: usize,
    pub unique_g: bool,
    pub unique_h: bool,
    /// `max(meg(G)|H|, meg(H)|G|)`
    pub lower: usize,
    /// `meg(G)|H| + meg(H)|G| - meg(G)meg(H)`
    pub upper: usize,
    pub cartesian: ProductValue,
    pub strong: ProductValue,
}

impl BoundsReport {
    /// Checks `lower ≤ meg(G□H) ≤ meg(G⊠H) ≤ upper` on whatever is known, and
    /// equality with `upper` when a factor is rigid.
    pub fn consistent(&self) -> bool {
        let mut ok = self.lower <= self.upper;
        let (c, s) = (self.cartesian.value, self.strong.value);
        for v in [c, s].into_iter().flatten() {
            ok &= self.lower <= v && v <= self.upper;
        }
        if let (Some(c), Some(s)) = (c, s) {
            ok &= c <= s;
        }
        if self.unique_g || self.unique_h {
            ok &= c.is_none_or(|c| c == self.upper) && s.is_none_or(|s| s == self.upper);
        }
        ok
    }
}

pub fn formula_bounds(meg_g: usize, g_order: usize, meg_h: usize, h_order: usize) -> (usize, usize) {
    let lower = (meg_g * h_order).max(meg_h * g_order);
    let upper = meg_g * h_order + meg_h * g_order - meg_g * meg_h;
    (lower, upper)
}

pub fn bounds_report(g: &Graph, h: &Graph, budget: &SearchBudget) -> Result<BoundsReport, SolveError> {
    let sg = meg_min(g, budget)?;
    let sh = meg_min(h, budget)?;
    let unique_g = unique_minimal_meg(g).is_some();
    let unique_h = unique_minimal_meg(h).is_some();
    let (lower, upper) = formula_bounds(sg.meg, g.order(), sh.meg, h.order());
    let rigid = unique_g || unique_h;
    let value_for = |kind: ProductKind| -> ProductValue {
        let Ok(p) = product(g, h, kind) else {
            return ProductValue { value: None, lower, upper, provenance: Provenance::Bounds };
        };
        let join = join_set(g.order(), h.order(), &sg.witness, &sh.witness);
        let budget = match kind {
            ProductKind::Cartesian => budget.clone().with_upper_seed(join),
            ProductKind::Strong if is_meg_set(&p.graph, &join).is_meg => budget.clone().with_upper_seed(join),
            ProductKind::Strong => budget.clone(),
        };
        match (kind, meg_min(&p.graph, &budget)) {
            (_, Ok(r)) => ProductValue { value: Some(r.meg), lower: r.meg, upper: r.meg, provenance: Provenance::Solved },
            (ProductKind::Cartesian, Err(_)) if rigid => {
                ProductValue { value: Some(upper), lower: upper, upper, provenance: Provenance::Theorem }
            }
            (ProductKind::Cartesian, Err(SolveError::BudgetExhausted { lower: lo, upper: hi, .. })) => ProductValue {
                value: None,
                lower: lower.max(lo),
                upper: upper.min(hi),
                provenance: Provenance::Bounds,
            },
            (ProductKind::Strong, Err(SolveError::BudgetExhausted { lower: lo, upper: hi, .. })) => {
                ProductValue { value: None, lower: lo, upper: hi, provenance: Provenance::Bounds }
            }
            (ProductKind::Cartesian, Err(_)) => ProductValue { value: None, lower, upper, provenance: Provenance::Bounds },
            (ProductKind::Strong, Err(_)) => {
                ProductValue { value: None, lower: 0, upper: p.graph.order(), provenance: Provenance::Bounds }
            }
        }
    };
    Ok(BoundsReport {
        g_order: g.order(),
        h_order: h.order(),
        meg_g: sg.meg,
        meg_h: sh.meg,
        unique_g,
        unique_h,
        lower,
        upper,
        cartesian: value_for(ProductKind::Cartesian),
        strong: value_for(ProductKind::Strong),
    })
}
