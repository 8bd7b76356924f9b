use std::fs;
use std::io::Read;
use std::path::Path;

use anyhow::{anyhow, Context as _};
use meg_core::families::torus_witness;
use meg_core::monitor::unique_minimal_with;
use meg_core::reduction::{parse_dimacs_cnf, preprocess, CnfFormula, Lit, Resolution};
use meg_core::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::vertex_set::parse_vertex_set;
use crate::RandomKind;

pub enum Failure {
    Input(anyhow::Error),
    Budget { lower: usize, upper: usize, best: Vec<usize>, nodes: u64 },
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.into())
    }
}

fn solve_failure(e: SolveError) -> Failure {
    match e {
        SolveError::BudgetExhausted { lower, upper, best, nodes } => Failure::Budget { lower, upper, best, nodes },
        other => Failure::Input(other.into()),
    }
}

type Outcome = Result<bool, Failure>;

pub struct Context {
    json: bool,
    budget: SearchBudget,
    seed: u64,
}

impl Context {
    pub fn new(json: bool, budget_nodes: Option<u64>, seed: u64) -> Result<Self, Failure> {
        let budget = match budget_nodes {
            Some(n) => SearchBudget::nodes(n).map_err(|e| Failure::Input(e.into()))?,
            None => SearchBudget::default(),
        };
        Ok(Context { json, budget, seed })
    }

    fn emit<T: Serialize>(&self, value: &T, text: impl FnOnce() -> String) {
        if self.json {
            println!("{}", serde_json::to_string_pretty(value).expect("serializable report"));
        } else {
            print!("{}", text());
        }
    }
}

fn read_text(path: &Path) -> anyhow::Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_graph(path: &Path) -> anyhow::Result<GraphFile> {
    read_graph(&read_text(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_cnf(path: &Path) -> anyhow::Result<CnfFormula> {
    parse_dimacs_cnf(&read_text(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn write_out(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn names(g: &Graph, vs: &[usize]) -> Vec<String> {
    vs.iter().map(|&v| g.display_name(v)).collect()
}

fn braces(g: &Graph, vs: &[usize]) -> String {
    format!("{{{}}}", names(g, vs).join(","))
}

fn edge_name(g: &Graph, e: EdgeId) -> String {
    format!("{}-{}", g.display_name(e.lo()), g.display_name(e.hi()))
}

#[derive(Serialize)]
struct SolveReport {
    meg: usize,
    xmeg: usize,
    witness: Vec<usize>,
    witness_labels: Vec<String>,
    method: &'static str,
    nodes_explored: u64,
}

/// Closes a Cartesian family product without search when the factor values
/// pin it down: a factor with a unique minimal MEG-set makes the join bound
/// exact, and the torus witness meets the lower bound.
fn structural(file: &GraphFile, budget: &SearchBudget) -> Result<Option<SolveReport>, SolveError> {
    let Some(spec) = file.provenance.as_deref().and_then(|p| p.parse::<FamilySpec>().ok()) else {
        return Ok(None);
    };
    let Some((ProductKind::Cartesian, a, b)) = spec.factors() else {
        return Ok(None);
    };
    let (Ok(ga), Ok(gb)) = (generate(&a), generate(&b)) else {
        return Ok(None);
    };
    let g = &file.graph;
    if !cartesian(&ga, &gb).is_ok_and(|p| p.graph.same_structure(g)) {
        return Ok(None);
    }
    let (ra, rb) = (meg_min(&ga, budget)?, meg_min(&gb, budget)?);
    let (lower, upper) = formula_bounds(ra.meg, ga.order(), rb.meg, gb.order());
    let report = |witness: Vec<usize>, method| SolveReport {
        meg: witness.len(),
        xmeg: g.order() - witness.len(),
        witness_labels: names(g, &witness),
        witness,
        method,
        nodes_explored: ra.nodes_explored + rb.nodes_explored,
    };
    let rigid = unique_minimal_with(&MegChecker::new(&ga)).is_some()
        || unique_minimal_with(&MegChecker::new(&gb)).is_some();
    let join = join_set(ga.order(), gb.order(), &ra.witness, &rb.witness);
    if rigid && join.len() == upper && is_meg_set(g, &join).is_meg {
        return Ok(Some(report(join, "join of factor witnesses, rigid factor")));
    }
    if let FamilySpec::Torus(m) = spec {
        if let Ok(w) = torus_witness(m) {
            if w.len() == lower && is_meg_set(g, &w).is_meg {
                return Ok(Some(report(w, "diagonal witness meets the lower bound")));
            }
        }
    }
    Ok(None)
}

pub fn solve(ctx: &Context, path: &Path) -> Outcome {
    let file = load_graph(path)?;
    let g = &file.graph;
    let report = match structural(&file, &ctx.budget).map_err(solve_failure)? {
        Some(r) => r,
        None => {
            let r = meg_min(g, &ctx.budget).map_err(solve_failure)?;
            SolveReport {
                meg: r.meg,
                xmeg: r.xmeg,
                witness_labels: names(g, &r.witness),
                witness: r.witness,
                method: "search",
                nodes_explored: r.nodes_explored,
            }
        }
    };
    ctx.emit(&report, || {
        format!(
            "meg = {}, witness {}\nxmeg = {}\nmethod = {}\nnodes = {}\n",
            report.meg,
            braces(g, &report.witness),
            report.xmeg,
            report.method,
            report.nodes_explored
        )
    });
    Ok(true)
}

pub fn verify(ctx: &Context, path: &Path, set: &str) -> Outcome {
    let file = load_graph(path)?;
    let g = &file.graph;
    let s = parse_vertex_set(g, set)?;
    let verdict = is_meg_set(g, &s);
    ctx.emit(&verdict.to_report(), || {
        let mut out = format!("MEG-set: {}\nsize = {}\n", if verdict.is_meg { "yes" } else { "no" }, s.len());
        if !verdict.unmonitored.is_empty() {
            let list: Vec<String> = verdict.unmonitored.iter().map(|&e| edge_name(g, e)).collect();
            out += &format!("unmonitored: {}\n", list.join(", "));
        }
        for (&e, &(u, v)) in &verdict.certificate {
            out += &format!("  {} by {{{},{}}}\n", edge_name(g, e), g.display_name(u), g.display_name(v));
        }
        out
    });
    Ok(verdict.is_meg)
}

pub fn pairs(ctx: &Context, path: &Path) -> Outcome {
    let g = load_graph(path)?.graph;
    let table = PairSetPerEdge::new(&g);
    let rows: Vec<_> =
        table.iter().map(|(e, ps)| json!({ "edge": [e.lo(), e.hi()], "pairs": ps.iter().map(|&(u, v)| [u, v]).collect::<Vec<_>>() })).collect();
    ctx.emit(&json!({ "edges": rows }), || {
        table
            .iter()
            .map(|(e, ps)| {
                let list: Vec<String> =
                    ps.iter().map(|&(u, v)| format!("{{{},{}}}", g.display_name(u), g.display_name(v))).collect();
                format!("{}: {}\n", edge_name(&g, e), list.join(" "))
            })
            .collect()
    });
    Ok(true)
}

pub fn product(ctx: &Context, kind: ProductKind, g: &Path, h: &Path, output: Option<&Path>) -> Outcome {
    let (g, h) = (load_graph(g)?.graph, load_graph(h)?.graph);
    let p = product_of(kind, &g, &h)?;
    let text = write_graph(&p.graph, None);
    if ctx.json {
        println!("{}", json!({ "kind": kind, "order": p.graph.order(), "size": p.graph.size(), "graph": text }));
    } else {
        write_out(output, &text)?;
    }
    Ok(true)
}

pub fn family(ctx: &Context, spec: &str, output: Option<&Path>) -> Outcome {
    let spec: FamilySpec = spec.parse()?;
    let g = generate(&spec)?;
    let text = write_graph(&g, Some(&spec.to_string()));
    if ctx.json {
        println!("{}", json!({ "family": spec.to_string(), "order": g.order(), "size": g.size(), "graph": text }));
    } else {
        write_out(output, &text)?;
    }
    Ok(true)
}

pub fn bounds(ctx: &Context, g: &Path, h: &Path) -> Outcome {
    let (g, h) = (load_graph(g)?.graph, load_graph(h)?.graph);
    let r = bounds_report(&g, &h, &ctx.budget).map_err(solve_failure)?;
    let value = |v: &ProductValue| match v.value {
        Some(x) => format!("{x} ({:?})", v.provenance).to_lowercase(),
        None => format!("in [{}, {}]", v.lower, v.upper),
    };
    ctx.emit(&r, || {
        format!(
            "meg(G) = {} of {}, meg(H) = {} of {}\nlower = {}\nupper = {}\ncartesian = {}\nstrong = {}\n",
            r.meg_g,
            r.g_order,
            r.meg_h,
            r.h_order,
            r.lower,
            r.upper,
            value(&r.cartesian),
            value(&r.strong)
        )
    });
    Ok(true)
}

pub fn forced(ctx: &Context, path: &Path) -> Outcome {
    let g = load_graph(path)?.graph;
    let checker = MegChecker::new(&g);
    let forced = checker.forced_vertices();
    let unique = unique_minimal_with(&checker).is_some();
    let report = json!({ "forced": forced, "forced_labels": names(&g, &forced), "unique_minimal": unique });
    ctx.emit(&report, || format!("forced = {}\nunique minimal MEG-set: {}\n", braces(&g, &forced), unique));
    Ok(true)
}

pub fn enumerate(ctx: &Context, path: &Path, limit: usize) -> Outcome {
    let g = load_graph(path)?.graph;
    let (sets, complete) = match enumerate_minimal_meg_sets(&g, limit) {
        Ok(s) => (s, true),
        Err(SolveError::LimitExceeded { partial, .. }) => (partial, false),
        Err(e @ SolveError::TooLarge { .. }) => return Err(Failure::Input(e.into())),
        Err(e) => return Err(solve_failure(e)),
    };
    let report = json!({ "complete": complete, "sets": sets });
    ctx.emit(&report, || {
        let mut out: String = sets.iter().map(|s| format!("{} ({})\n", braces(&g, s), s.len())).collect();
        if !complete {
            out += &format!("stopped after {limit} sets\n");
        }
        out
    });
    Ok(true)
}

pub fn reduce(ctx: &Context, path: &Path, output: Option<&Path>, sidecar: Option<&Path>) -> Outcome {
    let f = load_cnf(path)?;
    let pre = preprocess(&f);
    if pre.resolution != Resolution::SatEquivalent {
        ctx.emit(&json!({ "resolution": pre.resolution, "graph": null, "sidecar": null }), || {
            format!("resolution = {}\n", json!(pre.resolution).as_str().unwrap_or_default())
        });
        return Ok(true);
    }
    let layout = build_reduction(&pre.reduced)?;
    let tag = format!("reduction m={} n={} k={}", layout.m, layout.n, layout.k);
    let text = write_graph(&layout.graph, Some(&tag));
    let car = layout.sidecar();
    if let Some(p) = sidecar {
        fs::write(p, serde_json::to_string_pretty(&car)?).with_context(|| format!("writing {}", p.display()))?;
    }
    if ctx.json {
        println!("{}", json!({ "resolution": pre.resolution, "graph": text, "sidecar": car }));
    } else {
        write_out(output, &text)?;
        if output.is_some() {
            println!("k = {}, |V| = {}", layout.k, layout.graph.order());
        }
    }
    Ok(true)
}

pub fn decide_sat(ctx: &Context, path: &Path, cross_check: bool) -> Outcome {
    let f = load_cnf(path)?;
    let d = decide_sat_via_meg(&f, cross_check.then_some(&ctx.budget)).map_err(|e| match e {
        ReductionError::Solve(s) => solve_failure(s),
        other => Failure::Input(other.into()),
    })?;
    ctx.emit(&d, || {
        let mut out = format!("s {}\n", if d.satisfiable { "SATISFIABLE" } else { "UNSATISFIABLE" });
        out += &format!("c resolution {}\n", json!(d.resolution).as_str().unwrap_or_default());
        if let Some(a) = &d.assignment {
            let lits: Vec<String> = a.iter().enumerate().map(|(v, &b)| Lit::new(v, b).to_string()).collect();
            out += &format!("v {} 0\n", lits.join(" "));
        }
        if let Some(c) = d.cross_check {
            out += &format!("c unrestricted search agrees: {}\n", c == d.satisfiable);
        }
        out
    });
    Ok(d.satisfiable)
}

pub fn random(ctx: &Context, kind: RandomKind) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let text = match kind {
        RandomKind::Graph { n, p } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(anyhow!("edge probability must lie in [0, 1]").into());
            }
            let edges: Vec<(usize, usize)> =
                (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|_| rng.gen_bool(p)).collect();
            write_graph(&Graph::new(n, edges)?, Some(&format!("random graph {n} {p} seed {}", ctx.seed)))
        }
        RandomKind::Tree { n } => {
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut rng);
            let edges: Vec<(usize, usize)> = (1..n).map(|i| (order[rng.gen_range(0..i)], order[i])).collect();
            write_graph(&Graph::new(n, edges)?, Some(&format!("random tree {n} seed {}", ctx.seed)))
        }
        RandomKind::Cnf { vars, clauses, width } => {
            if vars == 0 || width == 0 {
                return Err(anyhow!("need at least one variable and a positive width").into());
            }
            let cs: Vec<Vec<Lit>> = (0..clauses)
                .map(|_| {
                    let w = rng.gen_range(1..=width.min(vars));
                    (0..w).map(|_| Lit::new(rng.gen_range(0..vars), rng.gen_bool(0.5))).collect()
                })
                .collect();
            format!("c random cnf seed {}\n{}", ctx.seed, CnfFormula::new(vars, cs).to_dimacs())
        }
    };
    print!("{text}");
    Ok(true)
}
