//! The gadget graph built from a normalized CNF formula.
//!
//! Vertex numbering: nine vertices per variable (`p+ q+ r+ s+ s- r- q- p- t`),
//! then five per clause (`u v w x y`), then connector-internal vertices in
//! clause order, then `z1` and `z2`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::cnf::CnfFormula;
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn of(positive: bool) -> Self {
        if positive {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Pos => '+',
            Sign::Neg => '-',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ConnectorKind {
    /// Length-2 path from `q` to `w`.
    QW,
    /// Length-3 path from the opposite-sign `r` to `v`.
    RV,
}

/// What a vertex of the gadget graph stands for. Indices are 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    P(usize, Sign),
    Q(usize, Sign),
    R(usize, Sign),
    S(usize, Sign),
    T(usize),
    U(usize),
    V(usize),
    W(usize),
    X(usize),
    Y(usize),
    Z1,
    Z2,
    Connector { var: usize, clause: usize, kind: ConnectorKind, position: usize },
}

// Labels are 1-based, e.g. `s+_2`, `u_1`, `conn_qw_1_3_0`.
impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Role::P(i, s) => write!(f, "p{}_{}", s.symbol(), i + 1),
            Role::Q(i, s) => write!(f, "q{}_{}", s.symbol(), i + 1),
            Role::R(i, s) => write!(f, "r{}_{}", s.symbol(), i + 1),
            Role::S(i, s) => write!(f, "s{}_{}", s.symbol(), i + 1),
            Role::T(i) => write!(f, "t_{}", i + 1),
            Role::U(j) => write!(f, "u_{}", j + 1),
            Role::V(j) => write!(f, "v_{}", j + 1),
            Role::W(j) => write!(f, "w_{}", j + 1),
            Role::X(j) => write!(f, "x_{}", j + 1),
            Role::Y(j) => write!(f, "y_{}", j + 1),
            Role::Z1 => f.write_str("z_1"),
            Role::Z2 => f.write_str("z_2"),
            Role::Connector { var, clause, kind, position } => {
                let k = match kind {
                    ConnectorKind::QW => "qw",
                    ConnectorKind::RV => "rv",
                };
                write!(f, "conn_{k}_{}_{}_{position}", var + 1, clause + 1)
            }
        }
    }
}

/// A precondition of the construction that the formula fails.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AssumptionViolated {
    #[error("variable {var} never appears {}", if *.positive { "positively" } else { "negated" })]
    MissingPolarity { var: usize, positive: bool },
    #[error("clause {0} contains a variable and its negation")]
    Tautology(usize),
    #[error("need at least two clauses, got {0}")]
    TooFewClauses(usize),
    #[error("clause {0} is empty")]
    EmptyClause(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionLayout {
    pub graph: Graph,
    /// Target size `3m + 2n`.
    pub k: usize,
    pub roles: Vec<Role>,
    pub formula: CnfFormula,
    /// Number of variables.
    pub m: usize,
    /// Number of clauses.
    pub n: usize,
    /// Number of literal occurrences.
    pub t: usize,
}

const VAR_ROLES: usize = 9;
const CLAUSE_ROLES: usize = 5;

impl ReductionLayout {
    pub fn var_vertex(&self, role: Role) -> usize {
        let slot = |i: usize, off: usize| VAR_ROLES * i + off;
        match role {
            Role::P(i, Sign::Pos) => slot(i, 0),
            Role::Q(i, Sign::Pos) => slot(i, 1),
            Role::R(i, Sign::Pos) => slot(i, 2),
            Role::S(i, Sign::Pos) => slot(i, 3),
            Role::S(i, Sign::Neg) => slot(i, 4),
            Role::R(i, Sign::Neg) => slot(i, 5),
            Role::Q(i, Sign::Neg) => slot(i, 6),
            Role::P(i, Sign::Neg) => slot(i, 7),
            Role::T(i) => slot(i, 8),
            _ => self.vertex(role),
        }
    }

    /// Index of the vertex playing `role`. Panics if no vertex does.
    pub fn vertex(&self, role: Role) -> usize {
        let clause = |j: usize, off: usize| VAR_ROLES * self.m + CLAUSE_ROLES * j + off;
        let last = self.graph.order();
        match role {
            Role::U(j) => clause(j, 0),
            Role::V(j) => clause(j, 1),
            Role::W(j) => clause(j, 2),
            Role::X(j) => clause(j, 3),
            Role::Y(j) => clause(j, 4),
            Role::Z1 => last - 2,
            Role::Z2 => last - 1,
            Role::Connector { .. } => self.roles.iter().position(|&r| r == role).expect("connector exists"),
            var_role => self.var_vertex(var_role),
        }
    }

    /// Edge `u_j v_j`, the one whose monitoring encodes clause satisfaction.
    pub fn clause_edge(&self, j: usize) -> (usize, usize) {
        (self.vertex(Role::U(j)), self.vertex(Role::V(j)))
    }

    /// `{p_i+, p_i-, s_i^(sign of a_i)}` for every variable, `{x_j, y_j}` for every clause.
    pub fn assignment_to_candidate_set(&self, assignment: &[bool]) -> Vec<usize> {
        assert_eq!(assignment.len(), self.m, "assignment must cover every variable");
        let mut set = Vec::with_capacity(self.k);
        for (i, &value) in assignment.iter().enumerate() {
            set.push(self.vertex(Role::P(i, Sign::Pos)));
            set.push(self.vertex(Role::P(i, Sign::Neg)));
            set.push(self.vertex(Role::S(i, Sign::of(value))));
        }
        for j in 0..self.n {
            set.push(self.vertex(Role::X(j)));
            set.push(self.vertex(Role::Y(j)));
        }
        set.sort_unstable();
        set
    }

    pub fn sidecar(&self) -> ReductionSidecar {
        ReductionSidecar {
            k: self.k,
            roles: self.roles.iter().enumerate().map(|(v, r)| (v, r.to_string())).collect(),
            t: self.t,
            m: self.m,
            n: self.n,
        }
    }
}

/// JSON companion of the layout graph; role keys are 0-based vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionSidecar {
    pub k: usize,
    pub roles: BTreeMap<usize, String>,
    pub t: usize,
    pub m: usize,
    pub n: usize,
}

pub fn check_assumptions(f: &CnfFormula) -> Result<(), AssumptionViolated> {
    if let Some(j) = f.clauses().iter().position(Vec::is_empty) {
        return Err(AssumptionViolated::EmptyClause(j + 1));
    }
    if let Some(j) = f.clauses().iter().position(|c| CnfFormula::is_tautology(c)) {
        return Err(AssumptionViolated::Tautology(j + 1));
    }
    if f.num_clauses() < 2 {
        return Err(AssumptionViolated::TooFewClauses(f.num_clauses()));
    }
    let mut seen = vec![[false; 2]; f.num_vars()];
    for l in f.clauses().iter().flatten() {
        seen[l.var()][usize::from(l.is_positive())] = true;
    }
    for (v, polarity) in seen.iter().enumerate() {
        for positive in [true, false] {
            if !polarity[usize::from(positive)] {
                return Err(AssumptionViolated::MissingPolarity { var: v + 1, positive });
            }
        }
    }
    Ok(())
}

pub fn build_reduction(f: &CnfFormula) -> Result<ReductionLayout, AssumptionViolated> {
    check_assumptions(f)?;
    let (m, n, t) = (f.num_vars(), f.num_clauses(), f.occurrences());
    let mut roles = Vec::with_capacity(VAR_ROLES * m + CLAUSE_ROLES * n + 3 * t + 2);
    for i in 0..m {
        use Sign::*;
        roles.extend([
            Role::P(i, Pos),
            Role::Q(i, Pos),
            Role::R(i, Pos),
            Role::S(i, Pos),
            Role::S(i, Neg),
            Role::R(i, Neg),
            Role::Q(i, Neg),
            Role::P(i, Neg),
            Role::T(i),
        ]);
    }
    for j in 0..n {
        roles.extend([Role::U(j), Role::V(j), Role::W(j), Role::X(j), Role::Y(j)]);
    }
    let var = |role: Role| -> usize {
        let (i, off) = match role {
            Role::P(i, Sign::Pos) => (i, 0),
            Role::Q(i, Sign::Pos) => (i, 1),
            Role::R(i, Sign::Pos) => (i, 2),
            Role::S(i, Sign::Pos) => (i, 3),
            Role::S(i, Sign::Neg) => (i, 4),
            Role::R(i, Sign::Neg) => (i, 5),
            Role::Q(i, Sign::Neg) => (i, 6),
            Role::P(i, Sign::Neg) => (i, 7),
            Role::T(i) => (i, 8),
            _ => unreachable!(),
        };
        VAR_ROLES * i + off
    };
    let clause = |j: usize, off: usize| VAR_ROLES * m + CLAUSE_ROLES * j + off;
    let mut edges = Vec::new();
    for i in 0..m {
        use Sign::*;
        let chain = [
            Role::P(i, Pos),
            Role::Q(i, Pos),
            Role::R(i, Pos),
            Role::S(i, Pos),
            Role::S(i, Neg),
            Role::R(i, Neg),
            Role::Q(i, Neg),
            Role::P(i, Neg),
        ];
        edges.extend(chain.windows(2).map(|w| (var(w[0]), var(w[1]))));
        edges.push((var(Role::R(i, Pos)), var(Role::T(i))));
        edges.push((var(Role::T(i)), var(Role::R(i, Neg))));
    }
    for j in 0..n {
        let (u, v, w, x, y) = (clause(j, 0), clause(j, 1), clause(j, 2), clause(j, 3), clause(j, 4));
        edges.extend([(u, v), (v, w), (u, w), (v, x), (w, y)]);
    }
    for (j, c) in f.clauses().iter().enumerate() {
        for lit in c {
            let (i, sign) = (lit.var(), Sign::of(lit.is_positive()));
            edges.push((var(Role::R(i, sign)), clause(j, 0)));
            let c0 = roles.len();
            roles.push(Role::Connector { var: i, clause: j, kind: ConnectorKind::QW, position: 0 });
            edges.extend([(var(Role::Q(i, sign)), c0), (c0, clause(j, 2))]);
            let (c1, c2) = (roles.len(), roles.len() + 1);
            roles.push(Role::Connector { var: i, clause: j, kind: ConnectorKind::RV, position: 0 });
            roles.push(Role::Connector { var: i, clause: j, kind: ConnectorKind::RV, position: 1 });
            edges.extend([(var(Role::R(i, sign.flip())), c1), (c1, c2), (c2, clause(j, 1))]);
        }
    }
    let z1 = roles.len();
    roles.extend([Role::Z1, Role::Z2]);
    for j in 0..n {
        edges.push((clause(j, 1), z1));
        edges.push((clause(j, 2), z1 + 1));
    }
    let labels = roles.iter().map(Role::to_string).collect();
    let graph = Graph::labeled(labels, edges).expect("gadget graph is simple");
    Ok(ReductionLayout { graph, k: 3 * m + 2 * n, roles, formula: f.clone(), m, n, t })
}
