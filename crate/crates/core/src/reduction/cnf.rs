//! DIMACS CNF formulas.

use std::cmp::Ordering;
use std::fmt::{self, Write as _};

use thiserror::Error;

/// A literal over a 0-based variable index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Lit {
    var: usize,
    positive: bool,
}

impl Lit {
    pub fn new(var: usize, positive: bool) -> Self {
        Lit { var, positive }
    }

    pub fn pos(var: usize) -> Self {
        Lit::new(var, true)
    }

    pub fn neg(var: usize) -> Self {
        Lit::new(var, false)
    }

    /// From a nonzero DIMACS integer (1-based, sign = polarity).
    pub fn from_dimacs(x: i64) -> Option<Self> {
        (x != 0).then(|| Lit::new(x.unsigned_abs() as usize - 1, x > 0))
    }

    pub fn to_dimacs(self) -> i64 {
        let v = self.var as i64 + 1;
        if self.positive {
            v
        } else {
            -v
        }
    }

    pub fn var(self) -> usize {
        self.var
    }

    pub fn is_positive(self) -> bool {
        self.positive
    }

    pub fn negated(self) -> Self {
        Lit::new(self.var, !self.positive)
    }

    pub fn satisfied_by(self, assignment: &[bool]) -> bool {
        assignment[self.var] == self.positive
    }
}

// Sorted by variable, positive before negative.
impl Ord for Lit {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.var, !self.positive).cmp(&(other.var, !other.positive))
    }
}

impl PartialOrd for Lit {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct CnfError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// A CNF formula; each clause is a sorted set of literals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Vec<Lit>>,
}

impl CnfFormula {
    /// Duplicate literals inside a clause collapse. Panics on out-of-range variables.
    pub fn new(num_vars: usize, clauses: impl IntoIterator<Item = Vec<Lit>>) -> Self {
        let clauses = clauses
            .into_iter()
            .map(|mut c| {
                assert!(c.iter().all(|l| l.var < num_vars), "literal out of range");
                c.sort_unstable();
                c.dedup();
                c
            })
            .collect();
        CnfFormula { num_vars, clauses }
    }

    /// From DIMACS-style signed integers.
    pub fn from_dimacs(num_vars: usize, clauses: &[&[i64]]) -> Self {
        Self::new(
            num_vars,
            clauses.iter().map(|c| c.iter().map(|&x| Lit::from_dimacs(x).expect("nonzero literal")).collect()),
        )
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Vec<Lit>] {
        &self.clauses
    }

    pub fn has_empty_clause(&self) -> bool {
        self.clauses.iter().any(Vec::is_empty)
    }

    /// Total number of literal occurrences.
    pub fn occurrences(&self) -> usize {
        self.clauses.iter().map(Vec::len).sum()
    }

    pub fn is_tautology(clause: &[Lit]) -> bool {
        clause.windows(2).any(|w| w[0].var == w[1].var)
    }

    pub fn clause_satisfied(clause: &[Lit], assignment: &[bool]) -> bool {
        clause.iter().any(|l| l.satisfied_by(assignment))
    }

    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| Self::clause_satisfied(c, assignment))
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                write!(out, "{l} ").unwrap();
            }
            out.push_str("0\n");
        }
        out
    }
}

/// Parses DIMACS CNF: `c` comments, a `p cnf <vars> <clauses>` header, then
/// zero-terminated clauses that may span lines. A `%` line ends the input.
pub fn parse_dimacs_cnf(text: &str) -> Result<CnfFormula, CnfError> {
    let err = |line: usize, column: usize, message: String| CnfError { line, column, message };
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<Lit> = Vec::new();
    let mut last = (1, 1);
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if trimmed.starts_with('%') {
            break;
        }
        if trimmed.starts_with('p') {
            let col = raw.len() - trimmed.len() + 1;
            if header.is_some() {
                return Err(err(line, col, "second header".into()));
            }
            let toks: Vec<&str> = trimmed.split_whitespace().collect();
            match toks[..] {
                ["p", "cnf", v, c] => match (v.parse(), c.parse()) {
                    (Ok(v), Ok(c)) => header = Some((v, c)),
                    _ => return Err(err(line, col, "bad counts in header".into())),
                },
                _ => return Err(err(line, col, "expected `p cnf <vars> <clauses>`".into())),
            }
            continue;
        }
        for (offset, tok) in tokens(raw) {
            let column = offset + 1;
            last = (line, column);
            let Some((vars, _)) = header else {
                return Err(err(line, column, "clause before header".into()));
            };
            let x: i64 = tok.parse().map_err(|_| err(line, column, format!("bad literal `{tok}`")))?;
            match Lit::from_dimacs(x) {
                None => clauses.push(std::mem::take(&mut current)),
                Some(l) if l.var >= vars => {
                    return Err(err(line, column, format!("variable {} exceeds header count {vars}", l.var + 1)))
                }
                Some(l) => current.push(l),
            }
        }
    }
    let (vars, count) = header.ok_or_else(|| err(1, 1, "missing `p cnf` header".into()))?;
    if !current.is_empty() {
        return Err(err(last.0, last.1, "last clause is not terminated by 0".into()));
    }
    if clauses.len() != count {
        return Err(err(
            last.0,
            last.1,
            format!("header announces {count} clauses but {} were given", clauses.len()),
        ));
    }
    Ok(CnfFormula::new(vars, clauses))
}

fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    line.split_whitespace().map(move |t| (t.as_ptr() as usize - line.as_ptr() as usize, t))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        let f = parse_dimacs_cnf("p cnf 2 2\n1 2 0\n-1 -2 0").unwrap();
        assert_eq!(f.num_vars(), 2);
        assert_eq!(f.clauses(), &[vec![Lit::pos(0), Lit::pos(1)], vec![Lit::neg(0), Lit::neg(1)]]);
        let f = parse_dimacs_cnf("p cnf 1 2\n1 0\n-1 0").unwrap();
        assert_eq!(f.clauses(), &[vec![Lit::pos(0)], vec![Lit::neg(0)]]);
        let f = parse_dimacs_cnf("p cnf 1 1\n1 -1 0").unwrap();
        assert!(CnfFormula::is_tautology(&f.clauses()[0]));
    }

    #[test]
    fn multi_line_clauses_comments_and_duplicates() {
        let f = parse_dimacs_cnf("c hi\np cnf 3 2\n1 2\n 2 -3 0 3\n0\n%\n0\n").unwrap();
        assert_eq!(f.clauses()[0], vec![Lit::pos(0), Lit::pos(1), Lit::neg(2)]);
        assert_eq!(f.clauses()[1], vec![Lit::pos(2)]);
    }

    #[test]
    fn empty_clause_is_flagged_not_fatal() {
        let f = parse_dimacs_cnf("p cnf 1 2\n1 0\n0\n").unwrap();
        assert!(f.has_empty_clause());
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_dimacs_cnf("p cnf 2 1\n1 x 0\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        let e = parse_dimacs_cnf("p cnf 2 1\n1 3 0\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        assert!(parse_dimacs_cnf("1 0\n").is_err());
        assert!(parse_dimacs_cnf("p cnf 2 2\n1 0\n").is_err());
        assert!(parse_dimacs_cnf("p cnf 2 1\n1 2\n").is_err());
        assert!(parse_dimacs_cnf("p dnf 2 1\n").is_err());
    }

    #[test]
    fn writes_dimacs() {
        let f = CnfFormula::from_dimacs(2, &[&[1, -2], &[2]]);
        assert_eq!(f.to_dimacs(), "p cnf 2 2\n1 -2 0\n2 0\n");
        assert_eq!(parse_dimacs_cnf(&f.to_dimacs()).unwrap(), f);
    }

    #[test]
    fn evaluation() {
        let f = CnfFormula::from_dimacs(2, &[&[1, 2], &[-1, -2]]);
        assert!(f.satisfied_by(&[true, false]));
        assert!(!f.satisfied_by(&[true, true]));
    }
}
