//! Polynomial reduction from CNF satisfiability to the MEG decision problem.

pub mod cnf;
pub mod layout;
pub mod preprocess;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

pub use cnf::{parse_dimacs_cnf, CnfError, CnfFormula, Lit};
pub use layout::{
    build_reduction, check_assumptions, AssumptionViolated, ConnectorKind, ReductionLayout, ReductionSidecar, Role,
    Sign,
};
pub use preprocess::{preprocess, Preprocessed, Resolution};

use crate::monitor::MegChecker;
use crate::solver::{meg_decision, SearchBudget, SolveError};

/// Upper limit on reduced variables for the exhaustive candidate scan.
pub const MAX_SCAN_VARIABLES: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error(transparent)]
    Assumption(#[from] AssumptionViolated),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("{vars} variables after preprocessing; the candidate scan handles at most {max}")]
    TooManyVariables { vars: usize, max: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SatDecision {
    pub satisfiable: bool,
    pub resolution: Resolution,
    /// A model of the original formula when satisfiable.
    pub assignment: Option<Vec<bool>>,
    /// `meg(G) <= k` from the unrestricted solver, when requested.
    pub cross_check: Option<bool>,
}

/// The `i`-th assignment in counting order: variable 0 is the lowest bit.
pub fn nth_assignment(m: usize, i: u64) -> Vec<bool> {
    (0..m).map(|v| i >> v & 1 == 1).collect()
}

/// First assignment (in counting order) whose candidate set is a MEG-set.
pub fn find_candidate_model(layout: &ReductionLayout) -> Option<Vec<bool>> {
    let checker = MegChecker::new(&layout.graph);
    (0..1u64 << layout.m)
        .into_par_iter()
        .map(|i| nth_assignment(layout.m, i))
        .find_first(|a| checker.is_meg(&checker.set(&layout.assignment_to_candidate_set(a))))
}

/// Decides satisfiability by scanning the assignment-form candidate sets of
/// the gadget graph. With a budget, the unrestricted decision `meg <= k` is
/// also computed and reported alongside.
pub fn decide_sat_via_meg(f: &CnfFormula, cross_check: Option<&SearchBudget>) -> Result<SatDecision, ReductionError> {
    let pre = preprocess(f);
    match pre.resolution {
        Resolution::TriviallyUnsat => {
            return Ok(SatDecision {
                satisfiable: false,
                resolution: pre.resolution,
                assignment: None,
                cross_check: None,
            })
        }
        Resolution::TriviallySat => {
            return Ok(SatDecision {
                satisfiable: true,
                resolution: pre.resolution,
                assignment: Some(pre.lift(&[])),
                cross_check: None,
            })
        }
        Resolution::SatEquivalent => {}
    }
    let m = pre.reduced.num_vars();
    if m > MAX_SCAN_VARIABLES {
        return Err(ReductionError::TooManyVariables { vars: m, max: MAX_SCAN_VARIABLES });
    }
    let layout = build_reduction(&pre.reduced)?;
    let model = find_candidate_model(&layout);
    let cross_check = cross_check.map(|b| meg_decision(&layout.graph, layout.k, b)).transpose()?;
    Ok(SatDecision {
        satisfiable: model.is_some(),
        resolution: pre.resolution,
        assignment: model.map(|a| pre.lift(&a)),
        cross_check,
    })
}
