use std::collections::BTreeSet;

use offended_voter::graph::{DynamicGraph, EdgeKey, IndexedEdgeSet};
use offended_voter::rng::rng_from_seed;
use offended_voter::stats::chi2_sf;
use proptest::prelude::*;
use rand::Rng;

#[test]
fn hundred_thousand_mixed_operations() {
    let n = 40u32;
    let mut rng = rng_from_seed(99);
    let mut set = IndexedEdgeSet::new(n as usize);
    let mut model = BTreeSet::new();
    for i in 0..100_000 {
        let a = rng.random_range(0..n);
        let mut b = rng.random_range(0..n - 1);
        if b >= a {
            b += 1;
        }
        let e = EdgeKey::new(a, b).unwrap();
        match rng.random_range(0..3) {
            0 => assert_eq!(set.insert(e), model.insert(e)),
            1 => assert_eq!(set.remove(e), model.remove(&e)),
            _ => {
                if let Ok(s) = set.sample_uniform(&mut rng) {
                    assert!(model.contains(&s));
                } else {
                    assert!(model.is_empty());
                }
            }
        }
        assert_eq!(set.len(), model.len());
        if i % 97 == 0 {
            set.check_inverse().unwrap();
        }
    }
    set.check_inverse().unwrap();
    let items: BTreeSet<EdgeKey> = set.items().iter().copied().collect();
    assert_eq!(items, model);
}

#[test]
fn ten_element_uniformity() {
    let mut set = IndexedEdgeSet::new(20);
    for i in 0..10 {
        set.insert(EdgeKey::new(2 * i, 2 * i + 1).unwrap());
    }
    // churn so positions no longer follow insertion order
    set.remove(EdgeKey::new(0, 1).unwrap());
    set.remove(EdgeKey::new(8, 9).unwrap());
    set.insert(EdgeKey::new(0, 1).unwrap());
    set.insert(EdgeKey::new(8, 9).unwrap());
    let mut rng = rng_from_seed(5);
    let samples = 50_000;
    let mut counts = [0u64; 10];
    for _ in 0..samples {
        counts[set.sample_uniform(&mut rng).unwrap().a() as usize / 2] += 1;
    }
    let expected = samples as f64 / 10.0;
    let chi2: f64 = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    let p = chi2_sf(chi2, 9);
    assert!(p >= 1e-3, "chi2 {chi2}, p {p}, counts {counts:?}");
}

proptest! {
    #[test]
    fn set_matches_model(ops in prop::collection::vec((0u32..12, 0u32..12, any::<bool>()), 1..400)) {
        let mut set = IndexedEdgeSet::new(12);
        let mut model = BTreeSet::new();
        for (a, b, insert) in ops {
            let Ok(e) = EdgeKey::new(a, b) else { continue };
            if insert {
                prop_assert_eq!(set.insert(e), model.insert(e));
            } else {
                prop_assert_eq!(set.remove(e), model.remove(&e));
            }
            prop_assert!(set.check_inverse().is_ok());
        }
        prop_assert_eq!(set.len(), model.len());
    }

    #[test]
    fn removals_keep_graph_consistent(n in 2usize..25, picks in prop::collection::vec(any::<prop::sample::Index>(), 0..200)) {
        let mut g = DynamicGraph::complete(n);
        let total = n * (n - 1) / 2;
        let mut removed = 0;
        for p in picks {
            if g.edge_count() == 0 {
                break;
            }
            let e = g.edges().items()[p.index(g.edge_count())];
            g.remove_edge(e).unwrap();
            removed += 1;
            prop_assert!(!g.has_edge(e));
            prop_assert!(g.remove_edge(e).is_err());
        }
        prop_assert!(g.check_consistency().is_ok());
        prop_assert_eq!(g.edge_count(), total - removed);
        prop_assert_eq!(g.connected_components().iter().sum::<usize>(), n);
        let degree_sum: usize = (0..n as u32).map(|v| g.degree(v)).sum();
        prop_assert_eq!(degree_sum, 2 * g.edge_count());
        prop_assert_eq!(g.min_degree(), (0..n as u32).map(|v| g.degree(v)).min().unwrap());
    }
}
