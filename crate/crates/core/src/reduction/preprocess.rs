//! Normalization that puts a formula into the shape the gadget graph needs:
//! no tautological clauses, both polarities of every variable present, and at
//! least two clauses.

use serde::{Deserialize, Serialize};

use super::cnf::{CnfFormula, Lit};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Resolution {
    /// The reduced formula is equisatisfiable and meets every assumption.
    SatEquivalent,
    TriviallySat,
    TriviallyUnsat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Preprocessed {
    pub reduced: CnfFormula,
    pub resolution: Resolution,
    /// Values fixed during preprocessing, indexed by original variable.
    pub assignment: Vec<Option<bool>>,
    /// Original variable of each reduced variable.
    pub var_map: Vec<usize>,
}

impl Preprocessed {
    /// Completes a model of the reduced formula to the original variables.
    /// Variables never constrained default to false.
    pub fn lift(&self, reduced_model: &[bool]) -> Vec<bool> {
        let mut full: Vec<bool> = self.assignment.iter().map(|v| v.unwrap_or(false)).collect();
        for (r, &orig) in self.var_map.iter().enumerate() {
            full[orig] = reduced_model[r];
        }
        full
    }
}

/// Drops tautologies, then fixes pure literals (lowest variable first) until
/// none remain, and renumbers the surviving variables densely.
pub fn preprocess(f: &CnfFormula) -> Preprocessed {
    let m = f.num_vars();
    let mut assignment = vec![None; m];
    if f.has_empty_clause() {
        return Preprocessed {
            reduced: f.clone(),
            resolution: Resolution::TriviallyUnsat,
            assignment,
            var_map: (0..m).collect(),
        };
    }
    let mut clauses: Vec<&Vec<Lit>> = f.clauses().iter().filter(|c| !CnfFormula::is_tautology(c)).collect();
    loop {
        let mut seen = vec![[false; 2]; m];
        for l in clauses.iter().flat_map(|c| c.iter()) {
            seen[l.var()][usize::from(l.is_positive())] = true;
        }
        let pure = (0..m).find_map(|v| match seen[v] {
            [false, true] => Some(Lit::pos(v)),
            [true, false] => Some(Lit::neg(v)),
            _ => None,
        });
        let Some(lit) = pure else { break };
        assignment[lit.var()] = Some(lit.is_positive());
        clauses.retain(|c| !c.contains(&lit));
    }
    if clauses.is_empty() {
        return Preprocessed {
            reduced: CnfFormula::new(0, []),
            resolution: Resolution::TriviallySat,
            assignment,
            var_map: Vec::new(),
        };
    }
    let mut present = vec![false; m];
    clauses.iter().flat_map(|c| c.iter()).for_each(|l| present[l.var()] = true);
    let var_map: Vec<usize> = (0..m).filter(|&v| present[v]).collect();
    let mut new_index = vec![usize::MAX; m];
    for (i, &v) in var_map.iter().enumerate() {
        new_index[v] = i;
    }
    let reduced = CnfFormula::new(
        var_map.len(),
        clauses.iter().map(|c| c.iter().map(|l| Lit::new(new_index[l.var()], l.is_positive())).collect()),
    );
    // A lone surviving clause would consist of pure literals, so at least two remain here.
    debug_assert!(reduced.num_clauses() >= 2);
    Preprocessed { reduced, resolution: Resolution::SatEquivalent, assignment, var_map }
}
