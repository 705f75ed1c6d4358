use std::collections::BTreeMap;

use serde::Serialize;

use super::{default_step_budget, run_delayed, DelayedError};
use crate::dynamics::{run_to_absorption, ModelParams, RunOutcome};
use crate::rng::derive_seed;
use crate::stats::{chi2_two_sample, total_variation};

#[derive(Debug, Clone, Serialize)]
pub struct EquivalenceReport {
    pub n: usize,
    pub q: f64,
    pub runs: u64,
    pub categories: usize,
    pub total_variation: f64,
    pub chi2: f64,
    pub dof: usize,
    pub p_value: f64,
}

type Key = (usize, Vec<u32>, usize);

fn key(o: &RunOutcome) -> Key {
    (o.outcome_class.index(), o.final_opinion_counts.clone(), o.edges_remaining)
}

/// Compares the absorbed-state law of the direct model with that of the
/// delayed model's jump chain over the joint of (class, final counts, edges
/// remaining). Balanced two-opinion start on the complete graph.
pub fn jump_chain_equivalence(
    n: usize,
    q: f64,
    runs: u64,
    seed: u64,
) -> Result<EquivalenceReport, DelayedError> {
    let params = ModelParams::balanced(n, q);
    let budget = default_step_budget(n, q);
    let mut table: BTreeMap<Key, [u64; 2]> = BTreeMap::new();
    for r in 0..runs {
        let direct = run_to_absorption(&params, derive_seed(seed, 0, 0, r))?;
        table.entry(key(&direct)).or_default()[0] += 1;
        let (delayed, _) = run_delayed(&params, derive_seed(seed, 1, 0, r), budget)?;
        table.entry(key(&delayed)).or_default()[1] += 1;
    }
    let a: Vec<u64> = table.values().map(|c| c[0]).collect();
    let b: Vec<u64> = table.values().map(|c| c[1]).collect();
    let (chi2, dof, p_value) = chi2_two_sample(&a, &b);
    Ok(EquivalenceReport {
        n,
        q,
        runs,
        categories: table.len(),
        total_variation: total_variation(&a, &b),
        chi2,
        dof,
        p_value,
    })
}
