use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use meg_core::{apsp, decide_sat_via_meg, generate, meg_min, monitoring_pairs, parse_dimacs_cnf, FamilySpec, SearchBudget};

fn family(spec: &str) -> meg_core::Graph {
    generate(&spec.parse::<FamilySpec>().unwrap()).unwrap()
}

fn distances(c: &mut Criterion) {
    let mut group = c.benchmark_group("apsp");
    for m in [5, 9, 15] {
        let g = family(&format!("toroidal_king {m}"));
        group.bench_with_input(BenchmarkId::from_parameter(m), &g, |b, g| b.iter(|| apsp(black_box(g))));
    }
    group.finish();
}

fn pairs(c: &mut Criterion) {
    let mut group = c.benchmark_group("monitoring_pairs");
    for spec in ["torus 7", "grid 6 6", "king 4 4"] {
        let g = family(spec);
        group.bench_function(spec, |b| {
            b.iter(|| g.edges().iter().map(|&e| monitoring_pairs(&g, e).unwrap().len()).sum::<usize>())
        });
    }
    group.finish();
}

fn solve(c: &mut Criterion) {
    let mut group = c.benchmark_group("meg_min");
    group.sample_size(10);
    for spec in ["cycle 9", "grid 4 4", "king 3 3", "torus 5", "pendant_cycle"] {
        let g = family(spec);
        group.bench_function(spec, |b| b.iter(|| meg_min(&g, &SearchBudget::default()).unwrap()));
    }
    group.finish();
}

fn sat(c: &mut Criterion) {
    let mut group = c.benchmark_group("decide_sat");
    group.sample_size(10);
    let formulas = [
        ("sat", "p cnf 3 3\n1 2 0\n-1 3 0\n-2 -3 0\n"),
        ("unsat", "p cnf 2 4\n1 2 0\n1 -2 0\n-1 2 0\n-1 -2 0\n"),
    ];
    for (name, text) in formulas {
        let f = parse_dimacs_cnf(text).unwrap();
        group.bench_function(name, |b| b.iter(|| decide_sat_via_meg(&f, None).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, distances, pairs, solve, sat);
criterion_main!(benches);
