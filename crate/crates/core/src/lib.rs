//! Monitoring edge-geodetic sets: verification, exact minimization, graph
//! products and a SAT reduction.
//!
//! A vertex set `S` monitors an edge `e` when some pair of vertices of `S` has
//! every shortest path running through `e`. A MEG-set monitors every edge, and
//! `meg(G)` is the smallest size of one.

pub mod distance;
pub mod families;
pub mod graph;
pub mod io;
pub mod monitor;
pub mod products;
pub mod reduction;
pub mod solver;

pub use distance::{apsp, dist_without_edge, graph_metrics, Distance, DistanceOracle, GraphMetrics};
pub use families::{generate, FamilyError, FamilySpec};
pub use graph::{EdgeId, Graph, GraphError};
pub use io::{read_graph, write_graph, GraphFile, ParseGraphError};
pub use monitor::{
    forced_vertices, is_meg_set, monitoring_pairs, pair_monitors_edge, pair_monitors_edge_by_counts,
    unique_minimal_meg, MegChecker, MegVerdict, PairSetPerEdge, VerdictReport,
};
pub use products::{
    bounds_report, cartesian, formula_bounds, join_set, product_of, strong, BoundsReport, ProductError, ProductGraph,
    ProductKind, ProductValue, Provenance,
};
pub use reduction::{
    build_reduction, decide_sat_via_meg, parse_dimacs_cnf, preprocess, CnfFormula, ReductionError, ReductionLayout,
    Resolution, SatDecision,
};
pub use solver::{
    enumerate_minimal_meg_sets, meg_decision, meg_decision_witness, meg_min, min_vertex_cover, SearchBudget,
    SolveError, SolveResult,
};
