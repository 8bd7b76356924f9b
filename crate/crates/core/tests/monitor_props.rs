mod common;

use common::*;
use meg_core::distance::{bfs_counts, Distance};
use meg_core::monitor::{pair_monitors_edge, pair_monitors_edge_by_counts};
use meg_core::*;
use num_bigint::BigUint;
use proptest::prelude::*;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let slots = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
            Graph::new(n, slots.zip(bits).filter(|(_, keep)| *keep).map(|(e, _)| e)).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn criteria_agree_with_each_other_and_the_oracle(g in arb_graph(12)) {
        let o = apsp(&g);
        let table = monitor_table(&g);
        let pairs = PairSetPerEdge::new(&g);
        for (i, &e) in g.edges().iter().enumerate() {
            prop_assert_eq!(pairs.pairs(i), &table[i][..]);
            for u in 0..g.order() {
                for v in u + 1..g.order() {
                    let removal = pair_monitors_edge(&g, &o, u, v, e).unwrap();
                    let counts = pair_monitors_edge_by_counts(&g, &o, u, v, e).unwrap();
                    prop_assert_eq!(removal, counts, "pair ({}, {}) edge {}", u, v, e);
                }
            }
            prop_assert!(table[i].contains(&e.endpoints()));
        }
    }

    #[test]
    fn monitoring_is_monotone(g in arb_graph(10), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut chain: Vec<usize> = (0..g.order()).collect();
        chain.shuffle(&mut rng(seed));
        let mut previous = g.edges().to_vec();
        for k in 0..=chain.len() {
            let verdict = is_meg_set(&g, &chain[..k]);
            prop_assert!(verdict.unmonitored.iter().all(|e| previous.contains(e)));
            previous = verdict.unmonitored;
        }
        prop_assert!(previous.is_empty());
    }

    #[test]
    fn deleting_an_edge_never_shortens(g in arb_graph(10)) {
        let o = apsp(&g);
        for &e in g.edges() {
            for u in 0..g.order() {
                for v in 0..g.order() {
                    prop_assert!(o.dist(u, v) <= dist_without_edge(&g, e, u, v).unwrap());
                }
            }
        }
    }

    #[test]
    fn path_counts_satisfy_the_recurrence(g in arb_graph(12)) {
        for u in 0..g.order() {
            let row = bfs_counts(&g, u);
            for v in 0..g.order() {
                let Distance::Finite(d) = row.dist[v] else { continue };
                if v == u {
                    prop_assert_eq!(&row.sigma[v], &BigUint::from(1u32));
                    continue;
                }
                let sum: BigUint = g
                    .neighbors(v)
                    .iter()
                    .filter(|&&w| row.dist[w] == Distance::Finite(d - 1))
                    .map(|&w| row.sigma[w].clone())
                    .sum();
                prop_assert_eq!(&row.sigma[v], &sum);
            }
        }
    }

    #[test]
    fn distances_are_invariant_under_relabelling(g in arb_graph(12), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut perm: Vec<usize> = (0..g.order()).collect();
        perm.shuffle(&mut rng(seed));
        let h = g.permuted(&perm);
        let (og, oh) = (apsp(&g), apsp(&h));
        for u in 0..g.order() {
            for v in 0..g.order() {
                prop_assert_eq!(og.dist(u, v), oh.dist(perm[u], perm[v]));
                prop_assert_eq!(og.sigma(u, v), oh.sigma(perm[u], perm[v]));
            }
        }
    }
}

#[test]
fn diameter_two_meg_sets_are_vertex_covers() {
    let mut r = rng(11);
    let mut checked = 0;
    while checked < 40 {
        let n = 4 + checked % 6;
        let g = gnp(&mut r, n, 0.6);
        if graph_metrics(&g).diameter != Some(2) {
            continue;
        }
        checked += 1;
        let checker = MegChecker::new(&g);
        for mask in 0..1u64 << n {
            let s = mask_to_vec(mask);
            if checker.is_meg(&checker.set(&s)) {
                assert!(g.edges().iter().all(|e| mask >> e.lo() & 1 == 1 || mask >> e.hi() & 1 == 1));
            }
        }
    }
}

#[test]
fn forced_vertices_lie_in_every_meg_set() {
    let mut r = rng(12);
    for i in 0..60 {
        let g = gnp(&mut r, 3 + i % 7, 0.45);
        let forced = forced_vertices(&g);
        let masks = all_meg_masks(&g);
        let inter = masks.iter().fold(u64::MAX, |acc, m| acc & m);
        assert_eq!(forced, mask_to_vec(inter & ((1 << g.order()) - 1)));
        let unique = unique_minimal_meg(&g);
        assert_eq!(unique.is_some(), masks.contains(&(inter & ((1 << g.order()) - 1))));
        if let Some(u) = unique {
            assert_eq!(u, forced);
        }
    }
}

#[test]
fn verdict_certificates_are_valid_and_minimal() {
    let mut r = rng(13);
    for i in 0..50 {
        let g = gnp(&mut r, 3 + i % 8, 0.4);
        let table = monitor_table(&g);
        let s: Vec<usize> = (0..g.order()).filter(|_| rand::Rng::gen_bool(&mut r, 0.6)).collect();
        let v = is_meg_set(&g, &s);
        for (i, e) in g.edges().iter().enumerate() {
            let inside: Vec<(usize, usize)> =
                table[i].iter().copied().filter(|(a, b)| s.contains(a) && s.contains(b)).collect();
            match v.certificate.get(e) {
                Some(p) => assert_eq!(Some(p), inside.first()),
                None => assert!(inside.is_empty() && v.unmonitored.contains(e)),
            }
        }
        assert_eq!(v.is_meg, v.unmonitored.is_empty());
    }
}
