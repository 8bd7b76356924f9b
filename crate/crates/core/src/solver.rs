//! Exact minimum MEG-sets.
//!
//! Every edge must contain one of its monitoring pairs inside the chosen set,
//! so the search is a branch-and-bound over pairs: pick the uncovered edge with
//! the fewest usable pairs and branch on adding each pair's missing endpoints.
//! Sibling branches are made disjoint by forbidding, in branch `i`, every pair
//! already tried in branches `0..i`. The lower bound packs uncovered edges whose
//! candidate vertices are pairwise disjoint.

use std::time::{Duration, Instant};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::distance::{components, graph_metrics};
use crate::graph::Graph;
use crate::monitor::{MegChecker, PairSetPerEdge};

pub const DEFAULT_NODE_LIMIT: u64 = 10_000_000;

/// Largest number of non-forced vertices [`enumerate_minimal_meg_sets`] accepts.
pub const MAX_ENUMERATION_FREE: usize = 26;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("search budget exhausted after {nodes} nodes; meg lies in [{lower}, {upper}]")]
    BudgetExhausted { lower: usize, upper: usize, best: Vec<usize>, nodes: u64 },
    #[error("invalid search budget: {0}")]
    InvalidBudget(&'static str),
    #[error("upper-bound seed is not a MEG-set")]
    InvalidSeed,
    #[error("more than {limit} minimal MEG-sets; returning the first {limit}")]
    LimitExceeded { limit: usize, partial: Vec<Vec<usize>> },
    #[error("{free} free vertices exceed the enumeration limit of {max}")]
    TooLarge { free: usize, max: usize },
}

/// Limits on the exact search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBudget {
    node_limit: u64,
    time_limit: Option<Duration>,
    upper_seed: Option<Vec<usize>>,
    lower_seed: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { node_limit: DEFAULT_NODE_LIMIT, time_limit: None, upper_seed: None, lower_seed: 0 }
    }
}

impl SearchBudget {
    pub fn new(node_limit: u64, time_limit: Option<Duration>) -> Result<Self, SolveError> {
        if node_limit == 0 {
            return Err(SolveError::InvalidBudget("node limit must be positive"));
        }
        if time_limit.is_some_and(|t| t.is_zero()) {
            return Err(SolveError::InvalidBudget("time limit must be positive"));
        }
        Ok(SearchBudget { node_limit, time_limit, ..Default::default() })
    }

    pub fn nodes(node_limit: u64) -> Result<Self, SolveError> {
        Self::new(node_limit, None)
    }

    /// A known MEG-set; its size caps the search from the start.
    pub fn with_upper_seed(mut self, seed: Vec<usize>) -> Self {
        self.upper_seed = Some(seed);
        self
    }

    /// A lower bound proven elsewhere; the search stops as soon as it is met.
    pub fn with_lower_seed(mut self, lower: usize) -> Self {
        self.lower_seed = lower;
        self
    }

    pub fn node_limit(&self) -> u64 {
        self.node_limit
    }

    pub fn time_limit(&self) -> Option<Duration> {
        self.time_limit
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResult {
    pub meg: usize,
    /// Lexicographically smallest minimum MEG-set, sorted.
    pub witness: Vec<usize>,
    pub xmeg: usize,
    pub nodes_explored: u64,
}

struct Meter {
    nodes: u64,
    limit: u64,
    deadline: Option<Instant>,
}

#[derive(Debug)]
struct Exhausted;

impl Meter {
    fn new(budget: &SearchBudget) -> Self {
        Meter {
            nodes: 0,
            limit: budget.node_limit,
            deadline: budget.time_limit.map(|t| Instant::now() + t),
        }
    }

    fn tick(&mut self) -> Result<(), Exhausted> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(Exhausted);
        }
        if self.nodes % 1024 == 0 && self.deadline.is_some_and(|d| Instant::now() > d) {
            return Err(Exhausted);
        }
        Ok(())
    }
}

#[derive(Clone)]
struct State {
    chosen: FixedBitSet,
    excluded: FixedBitSet,
    size: usize,
    covered: Vec<u32>,
    uncovered: usize,
    /// Sorted pairs that may not both enter `chosen`.
    forbidden: Vec<(usize, usize)>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Flow {
    Continue,
    Stop,
}

#[derive(Clone, Copy)]
enum Goal {
    /// Minimize, stopping once a solution of this size appears.
    Minimize { floor: usize },
    /// Any solution of at most this size.
    AtMost(usize),
}

struct Search<'a> {
    pairs: &'a PairSetPerEdge,
    /// For each vertex, the (edge, partner) entries of every pair containing it.
    incidence: Vec<Vec<(usize, usize)>>,
    goal: Goal,
    best: Option<FixedBitSet>,
    best_size: usize,
}

impl<'a> Search<'a> {
    fn new(pairs: &'a PairSetPerEdge, goal: Goal) -> Self {
        let mut incidence = vec![Vec::new(); pairs.order()];
        for i in 0..pairs.edges().len() {
            for &(a, b) in pairs.pairs(i) {
                incidence[a].push((i, b));
                incidence[b].push((i, a));
            }
        }
        let best_size = match goal {
            Goal::Minimize { .. } => usize::MAX,
            Goal::AtMost(k) => k + 1,
        };
        Search { pairs, incidence, goal, best: None, best_size }
    }

    fn root(&self) -> State {
        let n = self.pairs.order();
        let m = self.pairs.edges().len();
        State {
            chosen: FixedBitSet::with_capacity(n),
            excluded: FixedBitSet::with_capacity(n),
            size: 0,
            covered: vec![0; m],
            uncovered: m,
            forbidden: Vec::new(),
        }
    }

    fn add(&self, st: &mut State, v: usize) -> bool {
        if st.excluded.contains(v) {
            return false;
        }
        if st.chosen.contains(v) {
            return true;
        }
        st.chosen.insert(v);
        st.size += 1;
        for &(e, w) in &self.incidence[v] {
            if st.chosen.contains(w) {
                st.covered[e] += 1;
                if st.covered[e] == 1 {
                    st.uncovered -= 1;
                }
            }
        }
        let mut i = 0;
        while i < st.forbidden.len() {
            let (a, b) = st.forbidden[i];
            if a == v || b == v {
                let other = if a == v { b } else { a };
                st.forbidden.remove(i);
                if !exclude(st, other) {
                    return false;
                }
            } else {
                i += 1;
            }
        }
        true
    }

    fn forbid(&self, st: &mut State, a: usize, b: usize) -> bool {
        let (a, b) = (a.min(b), a.max(b));
        match (st.chosen.contains(a), st.chosen.contains(b)) {
            (true, true) => false,
            (true, false) => exclude(st, b),
            (false, true) => exclude(st, a),
            (false, false) => {
                if let Err(pos) = st.forbidden.binary_search(&(a, b)) {
                    st.forbidden.insert(pos, (a, b));
                }
                true
            }
        }
    }

    fn live(&self, st: &State, (a, b): (usize, usize)) -> bool {
        !st.excluded.contains(a)
            && !st.excluded.contains(b)
            && st.forbidden.binary_search(&(a, b)).is_err()
    }

    fn missing(st: &State, (a, b): (usize, usize)) -> usize {
        usize::from(!st.chosen.contains(a)) + usize::from(!st.chosen.contains(b))
    }

    /// Packing lower bound on vertices still to add, plus the branching edge.
    /// `None` when some uncovered edge has no usable pair left.
    fn analyze(&self, st: &State) -> Option<(usize, usize)> {
        let n = self.pairs.order();
        let mut branch: Option<(usize, usize)> = None;
        let mut needs: Vec<(usize, usize, Vec<usize>)> = Vec::new();
        for (e, &c) in st.covered.iter().enumerate() {
            if c > 0 {
                continue;
            }
            let mut live = 0;
            let mut cost = 2;
            let mut need = Vec::new();
            for &p in self.pairs.pairs(e) {
                if !self.live(st, p) {
                    continue;
                }
                live += 1;
                cost = cost.min(Self::missing(st, p));
                for v in [p.0, p.1] {
                    if !st.chosen.contains(v) {
                        need.push(v);
                    }
                }
            }
            if live == 0 {
                return None;
            }
            if branch.is_none_or(|(_, l)| live < l) {
                branch = Some((e, live));
            }
            need.sort_unstable();
            need.dedup();
            needs.push((need.len(), cost, need));
        }
        needs.sort_by_key(|(len, cost, _)| (*len, std::cmp::Reverse(*cost)));
        let mut used = FixedBitSet::with_capacity(n);
        let mut bound = 0;
        for (_, cost, need) in &needs {
            if need.iter().all(|&v| !used.contains(v)) {
                need.iter().for_each(|&v| used.insert(v));
                bound += cost;
            }
        }
        Some((bound, branch.map_or(usize::MAX, |(e, _)| e)))
    }

    fn run(&mut self, st: State, meter: &mut Meter) -> Result<Flow, Exhausted> {
        meter.tick()?;
        if st.uncovered == 0 {
            if st.size < self.best_size {
                self.best_size = st.size;
                self.best = Some(st.chosen.clone());
            }
            return Ok(match self.goal {
                Goal::AtMost(_) => Flow::Stop,
                Goal::Minimize { floor } if self.best_size <= floor => Flow::Stop,
                Goal::Minimize { .. } => Flow::Continue,
            });
        }
        let Some((bound, edge)) = self.analyze(&st) else {
            return Ok(Flow::Continue);
        };
        if st.size + bound >= self.best_size {
            return Ok(Flow::Continue);
        }
        let mut options: Vec<(usize, usize)> =
            self.pairs.pairs(edge).iter().copied().filter(|&p| self.live(&st, p)).collect();
        options.sort_by_key(|&p| (Self::missing(&st, p), p));
        'branches: for (i, &p) in options.iter().enumerate() {
            let mut child = st.clone();
            if !self.add(&mut child, p.0) || !self.add(&mut child, p.1) {
                continue;
            }
            for &q in &options[..i] {
                let outside: Vec<usize> =
                    [q.0, q.1].into_iter().filter(|&v| !child.chosen.contains(v)).collect();
                let ok = match outside[..] {
                    [] => continue 'branches,
                    [x] => exclude(&mut child, x),
                    _ => self.forbid(&mut child, q.0, q.1),
                };
                if !ok {
                    continue 'branches;
                }
            }
            if self.run(child, meter)? == Flow::Stop {
                return Ok(Flow::Stop);
            }
            if st.size + bound >= self.best_size {
                break;
            }
        }
        Ok(Flow::Continue)
    }
}

fn exclude(st: &mut State, v: usize) -> bool {
    if st.chosen.contains(v) {
        return false;
    }
    st.excluded.insert(v);
    true
}

fn bits_to_vec(s: &FixedBitSet) -> Vec<usize> {
    s.ones().collect()
}

/// Solver bound to one graph's monitoring pairs.
struct Instance {
    checker: MegChecker,
    forced: Vec<usize>,
    lower: usize,
}

impl Instance {
    fn new(g: &Graph, meter: &mut Meter) -> Result<Self, Exhausted> {
        let checker = MegChecker::new(g);
        let forced = checker.forced_vertices();
        let metrics = graph_metrics(g);
        let mut lower = forced.len().max(metrics.leaves);
        // On diameter-2 graphs every MEG-set is a vertex cover.
        if metrics.diameter == Some(2) {
            lower = lower.max(vertex_cover(g, meter)?.len());
        }
        Ok(Instance { checker, forced, lower })
    }

    fn pairs(&self) -> &PairSetPerEdge {
        self.checker.pairs()
    }

    /// Root state with forced vertices in, plus `extra` in and `banned` out.
    fn seeded(&self, search: &Search, extra: &[usize], banned: &[usize]) -> Option<State> {
        let mut st = search.root();
        for &v in banned {
            if !exclude(&mut st, v) {
                return None;
            }
        }
        for &v in self.forced.iter().chain(extra) {
            if !search.add(&mut st, v) {
                return None;
            }
        }
        Some(st)
    }

    fn minimize(
        &self,
        seed: Option<Vec<usize>>,
        floor: usize,
        meter: &mut Meter,
    ) -> Result<Vec<usize>, (usize, Vec<usize>)> {
        let n = self.checker.order();
        let floor = floor.max(self.lower);
        let mut search = Search::new(self.pairs(), Goal::Minimize { floor });
        let upper = seed.unwrap_or_else(|| (0..n).collect());
        search.best_size = upper.len();
        search.best = Some(self.checker.set(&upper));
        if upper.len() > floor {
            let root = self.seeded(&search, &[], &[]).expect("forced vertices are consistent");
            if search.run(root, meter).is_err() {
                let best = bits_to_vec(search.best.as_ref().unwrap());
                return Err((floor, best));
            }
        }
        Ok(bits_to_vec(search.best.as_ref().unwrap()))
    }

    fn feasible(
        &self,
        k: usize,
        extra: &[usize],
        banned: &[usize],
        meter: &mut Meter,
    ) -> Result<Option<Vec<usize>>, Exhausted> {
        let mut search = Search::new(self.pairs(), Goal::AtMost(k));
        let Some(root) = self.seeded(&search, extra, banned) else {
            return Ok(None);
        };
        if root.size > k {
            return Ok(None);
        }
        search.run(root, meter)?;
        Ok(search.best.as_ref().map(bits_to_vec))
    }

    /// Lexicographically smallest size-`k` MEG-set, given any one of them.
    fn canonical(&self, k: usize, witness: Vec<usize>, meter: &mut Meter) -> Result<Vec<usize>, Exhausted> {
        let mut hint = witness;
        let mut chosen: Vec<usize> = Vec::with_capacity(k);
        let mut lo = 0;
        for pos in 0..k {
            let fallback = hint[pos];
            let mut picked = fallback;
            for v in lo..fallback {
                let mut extra = chosen.clone();
                extra.push(v);
                let banned: Vec<usize> = (0..v).filter(|u| !chosen.contains(u)).collect();
                if let Some(mut sol) = self.feasible(k, &extra, &banned, meter)? {
                    sol.sort_unstable();
                    hint = sol;
                    picked = v;
                    break;
                }
            }
            chosen.push(picked);
            lo = picked + 1;
        }
        Ok(chosen)
    }
}

fn solve_component(
    g: &Graph,
    seed: Option<Vec<usize>>,
    floor: usize,
    meter: &mut Meter,
) -> Result<Vec<usize>, (usize, Vec<usize>)> {
    let fallback = |meter: &Meter| (0, (0..g.order()).collect::<Vec<_>>(), meter.nodes);
    let Ok(inst) = Instance::new(g, meter) else {
        let (lo, all, _) = fallback(meter);
        return Err((lo, all));
    };
    let best = inst.minimize(seed, floor, meter)?;
    let k = best.len();
    inst.canonical(k, best.clone(), meter).map_err(|_| (k, best))
}

/// Exact meg(G), solving each component separately.
pub fn meg_min(g: &Graph, budget: &SearchBudget) -> Result<SolveResult, SolveError> {
    let n = g.order();
    if let Some(seed) = &budget.upper_seed {
        if seed.iter().any(|&v| v >= n) || !crate::monitor::is_meg_set(g, seed).is_meg {
            return Err(SolveError::InvalidSeed);
        }
    }
    let mut meter = Meter::new(budget);
    let comps: Vec<Vec<usize>> = components(g).into_iter().filter(|c| c.len() > 1).collect();
    let single = comps.len() == 1;
    let mut witness = Vec::new();
    let (mut lower, mut upper, mut exhausted) = (0, 0, false);
    for comp in &comps {
        let sub = g.induced(comp);
        let seed = budget.upper_seed.as_ref().map(|s| {
            comp.iter().enumerate().filter(|(_, v)| s.contains(v)).map(|(i, _)| i).collect()
        });
        let floor = if single { budget.lower_seed } else { 0 };
        match solve_component(&sub, seed, floor, &mut meter) {
            Ok(w) => {
                lower += w.len();
                upper += w.len();
                witness.extend(w.into_iter().map(|i| comp[i]));
            }
            Err((lo, best)) => {
                exhausted = true;
                lower += lo;
                upper += best.len();
                witness.extend(best.into_iter().map(|i| comp[i]));
            }
        }
    }
    witness.sort_unstable();
    if exhausted {
        return Err(SolveError::BudgetExhausted { lower, upper, best: witness, nodes: meter.nodes });
    }
    Ok(SolveResult { meg: witness.len(), xmeg: n - witness.len(), witness, nodes_explored: meter.nodes })
}

/// Whether some MEG-set has at most `k` vertices.
pub fn meg_decision(g: &Graph, k: usize, budget: &SearchBudget) -> Result<bool, SolveError> {
    meg_decision_witness(g, k, budget).map(|w| w.is_some())
}

/// Like [`meg_decision`], returning the MEG-set found.
pub fn meg_decision_witness(
    g: &Graph,
    k: usize,
    budget: &SearchBudget,
) -> Result<Option<Vec<usize>>, SolveError> {
    let mut meter = Meter::new(budget);
    let checker = MegChecker::new(g);
    let forced = checker.forced_vertices();
    let inst = Instance { checker, forced, lower: 0 };
    inst.feasible(k, &[], &[], &mut meter).map_err(|_| SolveError::BudgetExhausted {
        lower: inst.forced.len(),
        upper: g.order(),
        best: (0..g.order()).collect(),
        nodes: meter.nodes,
    })
}

/// All inclusion-minimal MEG-sets, sorted lexicographically.
///
/// Every minimal set contains the forced vertices, so only supersets of the
/// forced set are scanned; that scan is exponential in the remaining vertices.
pub fn enumerate_minimal_meg_sets(g: &Graph, limit: usize) -> Result<Vec<Vec<usize>>, SolveError> {
    if limit == 0 {
        return Err(SolveError::InvalidBudget("enumeration limit must be positive"));
    }
    let checker = MegChecker::new(g);
    let forced = checker.forced_vertices();
    let free: Vec<usize> = (0..g.order()).filter(|v| !forced.contains(v)).collect();
    if free.len() > MAX_ENUMERATION_FREE {
        return Err(SolveError::TooLarge { free: free.len(), max: MAX_ENUMERATION_FREE });
    }
    let mut found = Vec::new();
    let mut overflow = false;
    for mask in 0u64..(1u64 << free.len()) {
        let mut s = checker.set(&forced);
        for (bit, &v) in free.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                s.insert(v);
            }
        }
        if !checker.is_meg(&s) {
            continue;
        }
        let minimal = free.iter().enumerate().filter(|(bit, _)| mask >> bit & 1 == 1).all(|(_, &v)| {
            s.set(v, false);
            let still = checker.is_meg(&s);
            s.set(v, true);
            !still
        });
        if minimal {
            if found.len() == limit {
                overflow = true;
                break;
            }
            found.push(bits_to_vec(&s));
        }
    }
    found.sort();
    if overflow {
        return Err(SolveError::LimitExceeded { limit, partial: found });
    }
    Ok(found)
}

fn vertex_cover(g: &Graph, meter: &mut Meter) -> Result<Vec<usize>, Exhausted> {
    fn go(
        g: &Graph,
        inside: &mut FixedBitSet,
        size: usize,
        best: &mut (usize, FixedBitSet),
        meter: &mut Meter,
    ) -> Result<(), Exhausted> {
        meter.tick()?;
        if size >= best.0 {
            return Ok(());
        }
        // Uncovered edges and the vertex touching most of them.
        let mut deg = vec![0usize; g.order()];
        let mut uncovered = 0usize;
        for e in g.edges() {
            if !inside.contains(e.lo()) && !inside.contains(e.hi()) {
                deg[e.lo()] += 1;
                deg[e.hi()] += 1;
                uncovered += 1;
            }
        }
        if uncovered == 0 {
            *best = (size, inside.clone());
            return Ok(());
        }
        let (v, &dmax) = deg.iter().enumerate().max_by_key(|&(v, d)| (*d, std::cmp::Reverse(v))).unwrap();
        // Each chosen vertex covers at most dmax edges.
        if size + uncovered.div_ceil(dmax) >= best.0 {
            return Ok(());
        }
        inside.insert(v);
        go(g, inside, size + 1, best, meter)?;
        inside.set(v, false);
        let open: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| !inside.contains(w)).collect();
        open.iter().for_each(|&w| inside.insert(w));
        go(g, inside, size + open.len(), best, meter)?;
        open.iter().for_each(|&w| inside.set(w, false));
        Ok(())
    }
    let n = g.order();
    let mut all = FixedBitSet::with_capacity(n);
    all.insert_range(..);
    let mut best = (n + 1, all);
    go(g, &mut FixedBitSet::with_capacity(n), 0, &mut best, meter)?;
    Ok(bits_to_vec(&best.1))
}

/// A minimum vertex cover, lexicographic order not guaranteed.
pub fn min_vertex_cover(g: &Graph, budget: &SearchBudget) -> Result<Vec<usize>, SolveError> {
    let mut meter = Meter::new(budget);
    vertex_cover(g, &mut meter).map_err(|_| SolveError::BudgetExhausted {
        lower: 0,
        upper: g.order(),
        best: (0..g.order()).collect(),
        nodes: meter.nodes,
    })
}
