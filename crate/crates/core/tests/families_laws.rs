mod common;

use common::*;
use meg_core::families::{complete_multipartite, cycle, cycle_triple, torus_witness};
use meg_core::products::slices;
use meg_core::*;

#[test]
fn trees_need_exactly_their_leaves() {
    let mut r = rng(41);
    for i in 0..100 {
        let t = random_tree(&mut r, 2 + i % 11);
        assert_eq!(meg_min(&t, &SearchBudget::default()).unwrap().meg, leaves(&t));
    }
}

fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    (1..=n.min(max))
        .rev()
        .flat_map(|first| {
            partitions(n - first, first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

#[test]
fn complete_multipartite_graphs_other_than_stars_need_everything() {
    let mut seen = 0;
    for n in 3..=8 {
        for parts in partitions(n, n) {
            let star = parts.len() == 2 && parts.contains(&1);
            if parts.len() < 2 || star {
                continue;
            }
            let g = complete_multipartite(&parts);
            assert_eq!(meg_min(&g, &SearchBudget::default()).unwrap().meg, n, "{parts:?}");
            seen += 1;
        }
    }
    assert!(seen > 30);
    let star = complete_multipartite(&[1, 4]);
    assert_eq!(meg_min(&star, &SearchBudget::default()).unwrap().meg, 4);
}

#[test]
fn small_cycles() {
    assert_eq!(meg_min(&cycle(3), &SearchBudget::default()).unwrap().meg, 3);
    assert_eq!(meg_min(&cycle(4), &SearchBudget::default()).unwrap().meg, 4);
    for m in 5..=9 {
        let g = cycle(m);
        assert_eq!(meg_min(&g, &SearchBudget::default()).unwrap().meg, 3, "C{m}");
        assert_eq!(brute_meg(&g).0, 3);
    }
}

#[test]
fn torus_slices_are_rotations() {
    for m in 5..=8 {
        let base = cycle_triple(m).unwrap();
        let w = torus_witness(m).unwrap();
        let view = slices(m, m, &w);
        for (i, slice) in view.rows.iter().chain(&view.cols).enumerate() {
            let shift = i % m;
            let mut rotated: Vec<usize> = base.iter().map(|&s| (s + m - shift) % m).collect();
            rotated.sort_unstable();
            assert_eq!(slice, &rotated);
        }
        let g = generate(&FamilySpec::Torus(m)).unwrap();
        assert!(is_meg_set(&g, &w).is_meg, "m = {m}");
    }
}

#[test]
fn roundtrip_through_files() {
    for spec in ["path 4", "cycle 6", "grid 2 3", "king 3 3", "torus 5", "multipartite 2 2 3", "pendant_cycle"] {
        let spec: FamilySpec = spec.parse().unwrap();
        let g = generate(&spec).unwrap();
        let text = write_graph(&g, Some(&spec.to_string()));
        let back = read_graph(&text).unwrap();
        assert_eq!(back.graph, g);
        assert_eq!(back.provenance.as_deref(), Some(spec.to_string().as_str()));
    }
}
