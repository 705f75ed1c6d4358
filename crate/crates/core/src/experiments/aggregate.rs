use std::io::Write;

use serde::Serialize;

use super::records::{csv_error, csv_writer, RunRecord};
use super::{ExperimentConfig, ExperimentError};
use crate::dynamics::{OutcomeClass, RunOutcome};
use crate::format::float;
use crate::stats::{mean, median, wilson_interval, Z95};

/// Empirical probability with a 95% Wilson interval. All NaN without trials.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Proportion {
    pub successes: u64,
    pub trials: u64,
    pub p_hat: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
}

impl Proportion {
    pub fn new(successes: u64, trials: u64) -> Self {
        let (p_hat, (ci_lo, ci_hi)) = match wilson_interval(successes, trials, Z95) {
            Ok(ci) => (successes as f64 / trials as f64, ci),
            Err(_) => (f64::NAN, (f64::NAN, f64::NAN)),
        };
        Proportion { successes, trials, p_hat, ci_lo, ci_hi }
    }

    pub fn half_width(&self) -> f64 {
        (self.ci_hi - self.ci_lo) / 2.0
    }
}

/// Summary of one `(q, N)` grid point over its completed runs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AggregateStats {
    pub q_index: usize,
    pub n_index: usize,
    pub q: f64,
    pub n: usize,
    pub k: usize,
    pub replicates: u64,
    pub failed: u64,
    /// Indexed like [`OutcomeClass::ALL`].
    pub class_counts: [u64; 3],
    pub class_probability: [Proportion; 3],
    pub eps_consensus: Proportion,
    pub tau_mean: f64,
    pub tau_median: f64,
    pub tau_seg_mean: f64,
    pub tau_seg_median: f64,
    /// Mean edges remaining, per class.
    pub edges_mean: [f64; 3],
    pub c1_mean: f64,
    pub c2_mean: f64,
    pub n_components_mean: f64,
    /// NaN when K < 3.
    pub strong_segregation_fraction: f64,
}

impl AggregateStats {
    pub fn segregation(&self) -> &Proportion {
        &self.class_probability[OutcomeClass::Segregation.index()]
    }
}

pub const AGGREGATE_HEADER: [&str; 33] = [
    "q_index",
    "n_index",
    "q",
    "N",
    "K",
    "replicates",
    "failed",
    "n_segregation",
    "n_disconnected_consensus",
    "n_connected_consensus",
    "p_segregation",
    "p_segregation_lo",
    "p_segregation_hi",
    "p_disconnected_consensus",
    "p_disconnected_consensus_lo",
    "p_disconnected_consensus_hi",
    "p_connected_consensus",
    "p_connected_consensus_lo",
    "p_connected_consensus_hi",
    "p_eps_consensus",
    "p_eps_consensus_lo",
    "p_eps_consensus_hi",
    "tau_mean",
    "tau_median",
    "tau_seg_mean",
    "tau_seg_median",
    "edges_mean_segregation",
    "edges_mean_disconnected_consensus",
    "edges_mean_connected_consensus",
    "c1_mean",
    "c2_mean",
    "n_components_mean",
    "strong_segregation_fraction",
];

fn stat_of<F: Fn(&RunOutcome) -> f64>(runs: &[&RunOutcome], f: F) -> Vec<f64> {
    runs.iter().map(|o| f(o)).collect()
}

/// One entry per grid point, in grid order. `records` must come from `config`.
pub fn aggregate(config: &ExperimentConfig, records: &[RunRecord]) -> Vec<AggregateStats> {
    config
        .grid()
        .into_iter()
        .map(|p| {
            let cell: Vec<&RunRecord> =
                records.iter().filter(|r| r.q_index == p.q_index && r.n_index == p.n_index).collect();
            let done: Vec<&RunOutcome> = cell.iter().filter_map(|r| r.outcome.as_ref()).collect();
            let trials = done.len() as u64;
            let mut class_counts = [0u64; 3];
            for o in &done {
                class_counts[o.outcome_class.index()] += 1;
            }
            let tau = stat_of(&done, |o| o.tau_abs as f64);
            let seg: Vec<&RunOutcome> =
                done.iter().copied().filter(|o| o.outcome_class == OutcomeClass::Segregation).collect();
            let tau_seg = stat_of(&seg, |o| o.tau_abs as f64);
            let edges_mean = OutcomeClass::ALL.map(|c| {
                let of_class: Vec<&RunOutcome> =
                    done.iter().copied().filter(|o| o.outcome_class == c).collect();
                mean(&stat_of(&of_class, |o| o.edges_remaining as f64))
            });
            AggregateStats {
                q_index: p.q_index,
                n_index: p.n_index,
                q: p.q,
                n: p.n,
                k: config.k,
                replicates: cell.len() as u64,
                failed: cell.len() as u64 - trials,
                class_counts,
                class_probability: class_counts.map(|c| Proportion::new(c, trials)),
                eps_consensus: Proportion::new(
                    done.iter().filter(|o| o.eps_consensus).count() as u64,
                    trials,
                ),
                tau_mean: mean(&tau),
                tau_median: median(&tau),
                tau_seg_mean: mean(&tau_seg),
                tau_seg_median: median(&tau_seg),
                edges_mean,
                c1_mean: mean(&stat_of(&done, |o| o.component(0) as f64)),
                c2_mean: mean(&stat_of(&done, |o| o.component(1) as f64)),
                n_components_mean: mean(&stat_of(&done, |o| o.component_sizes.len() as f64)),
                strong_segregation_fraction: if config.k >= 3 && trials > 0 {
                    done.iter().filter(|o| o.strong_segregation).count() as f64 / trials as f64
                } else {
                    f64::NAN
                },
            }
        })
        .collect()
}

pub fn write_aggregate_csv<W: Write>(stats: &[AggregateStats], out: W) -> Result<(), ExperimentError> {
    let mut w = csv_writer(out);
    w.write_record(AGGREGATE_HEADER).map_err(csv_error)?;
    for s in stats {
        let mut f = vec![
            s.q_index.to_string(),
            s.n_index.to_string(),
            float(s.q),
            s.n.to_string(),
            s.k.to_string(),
            s.replicates.to_string(),
            s.failed.to_string(),
        ];
        f.extend(s.class_counts.iter().map(u64::to_string));
        for p in s.class_probability.iter().chain([&s.eps_consensus]) {
            f.extend([float(p.p_hat), float(p.ci_lo), float(p.ci_hi)]);
        }
        f.extend([s.tau_mean, s.tau_median, s.tau_seg_mean, s.tau_seg_median].map(float));
        f.extend(s.edges_mean.map(float));
        f.extend([s.c1_mean, s.c2_mean, s.n_components_mean, s.strong_segregation_fraction].map(float));
        w.write_record(&f).map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}
