use std::collections::BTreeMap;

use offended_voter::delayed::DelayedState;
use offended_voter::dynamics::ModelParams;
use offended_voter::rng::rng_from_seed;

/// Steps binned on the number of discordant edges `E_d` before the step: the
/// model moves with probability `2 E_d / (N (N - 1))` and votes with
/// probability `q` times that.
#[test]
fn jump_and_vote_frequencies_by_discordance() {
    let (n, q) = (8usize, 0.4);
    let pairs = (n * (n - 1)) as f64 / 2.0;
    let params = ModelParams::balanced(n, q);
    // E_d -> (steps, moves, votes)
    let mut bins: BTreeMap<usize, (u64, u64, u64)> = BTreeMap::new();
    let mut rng = rng_from_seed(12);
    for _ in 0..4000 {
        let mut s = DelayedState::new(&params).unwrap();
        while !s.model().is_absorbed() {
            let ed = s.model().discordant_count();
            let before = (s.model().opinions().to_vec(), s.model().graph().edge_count());
            let ev = s.step(&mut rng).unwrap();
            let after = (s.model().opinions().to_vec(), s.model().graph().edge_count());
            assert_eq!(ev.changed, before != after);
            assert_eq!(ev.updated, before.0 != after.0);
            let bin = bins.entry(ed).or_default();
            bin.0 += 1;
            bin.1 += u64::from(ev.changed);
            bin.2 += u64::from(ev.updated);
        }
    }
    let mut tested = 0;
    for (&ed, &(steps, moves, votes)) in &bins {
        if steps < 2000 {
            continue;
        }
        tested += 1;
        for (hits, p) in [(moves, ed as f64 / pairs), (votes, q * ed as f64 / pairs)] {
            let sigma = (p * (1.0 - p) / steps as f64).sqrt();
            let f = hits as f64 / steps as f64;
            assert!((f - p).abs() <= 4.0 * sigma, "E_d = {ed}: {f} vs {p} (sigma {sigma}, {steps} steps)");
        }
    }
    assert!(tested >= 8, "only {tested} well-populated bins");
}

#[test]
fn coupling_holds_throughout() {
    for (i, q) in [0.0, 0.3, 0.7, 1.0].into_iter().enumerate() {
        let params = ModelParams::balanced(20, q);
        let mut rng = rng_from_seed(i as u64);
        for _ in 0..10 {
            let mut s = DelayedState::new(&params).unwrap();
            while !s.model().is_absorbed() {
                let ev = s.step(&mut rng).unwrap();
                assert!(s.pair_coupled(ev.pair));
                if s.global_step().is_multiple_of(50) {
                    assert!(s.is_subgraph());
                }
            }
            assert!(s.is_subgraph());
            assert!(s.deletion_graph().edge_count() <= s.model().graph().edge_count());
        }
    }
}
