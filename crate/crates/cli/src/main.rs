//! `meg`: solve, verify and explore monitoring edge-geodetic sets.
//!
//! Exit codes: 0 success or a true verdict, 1 a false verdict, 2 bad input,
//! 3 search budget exhausted.

mod commands;
mod vertex_set;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use meg_core::ProductKind;

use commands::{Context, Failure};

#[derive(Parser, Debug)]
#[command(name = "meg", version, about = "Monitoring edge-geodetic sets of graphs", long_about = None)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Node limit for the exact search.
    #[arg(long, global = true, value_name = "N")]
    budget_nodes: Option<u64>,
    /// Seed for `random`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Minimum MEG-set of a graph file.
    Solve { graph: PathBuf },
    /// Check whether a vertex set (indices or labels, comma separated) is a MEG-set.
    Verify { graph: PathBuf, set: String },
    /// Monitoring pairs of every edge.
    Pairs { graph: PathBuf },
    /// Cartesian (`cartesian`/`box`) or strong (`strong`/`king`) product of two graph files.
    Product {
        kind: ProductKind,
        g: PathBuf,
        h: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Generate a named family, e.g. `torus 5`, `king 3 3`, `pendant_cycle`.
    Family {
        #[arg(required = true, num_args = 1..)]
        spec: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Product bounds from the factors, with solved product values.
    Bounds { g: PathBuf, h: PathBuf },
    /// Vertices in every MEG-set, and whether they form the unique minimal one.
    Forced { graph: PathBuf },
    /// All inclusion-minimal MEG-sets.
    Enumerate {
        graph: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        limit: usize,
    },
    /// Build the gadget graph of a DIMACS CNF formula.
    Reduce {
        cnf: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Where to write the JSON sidecar.
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
    /// Decide a DIMACS CNF formula through the gadget graph.
    DecideSat {
        cnf: PathBuf,
        /// Also run the unrestricted decision search on the gadget graph.
        #[arg(long)]
        cross_check: bool,
    },
    /// Seeded random inputs.
    Random {
        #[command(subcommand)]
        kind: RandomKind,
    },
}

#[derive(Subcommand, Debug)]
pub enum RandomKind {
    /// G(n, p).
    Graph { n: usize, p: f64 },
    /// Uniform random labelled tree.
    Tree { n: usize },
    /// `clauses` random clauses of up to `width` literals over `vars` variables.
    Cnf {
        vars: usize,
        clauses: usize,
        #[arg(long, default_value_t = 3)]
        width: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let ctx = match Context::new(cli.json, cli.budget_nodes, cli.seed) {
        Ok(ctx) => ctx,
        Err(e) => return report(e, cli.json),
    };
    let result = match cli.command {
        Command::Solve { graph } => commands::solve(&ctx, &graph),
        Command::Verify { graph, set } => commands::verify(&ctx, &graph, &set),
        Command::Pairs { graph } => commands::pairs(&ctx, &graph),
        Command::Product { kind, g, h, output } => commands::product(&ctx, kind, &g, &h, output.as_deref()),
        Command::Family { spec, output } => commands::family(&ctx, &spec.join(" "), output.as_deref()),
        Command::Bounds { g, h } => commands::bounds(&ctx, &g, &h),
        Command::Forced { graph } => commands::forced(&ctx, &graph),
        Command::Enumerate { graph, limit } => commands::enumerate(&ctx, &graph, limit),
        Command::Reduce { cnf, output, sidecar } => {
            commands::reduce(&ctx, &cnf, output.as_deref(), sidecar.as_deref())
        }
        Command::DecideSat { cnf, cross_check } => commands::decide_sat(&ctx, &cnf, cross_check),
        Command::Random { kind } => commands::random(&ctx, kind),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => report(e, cli.json),
    }
}

fn report(e: Failure, json: bool) -> ExitCode {
    match e {
        Failure::Input(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Failure::Budget { lower, upper, best, nodes } => {
            if json {
                let v = serde_json::json!({
                    "budget_exhausted": true, "lower": lower, "upper": upper, "best": best, "nodes_explored": nodes
                });
                println!("{v}");
            } else {
                println!("budget exhausted after {nodes} nodes: meg in [{lower}, {upper}]");
            }
            ExitCode::from(3)
        }
    }
}
