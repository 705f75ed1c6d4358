use std::path::PathBuf;

use serde::Serialize;

use super::aggregate::Proportion;
use super::records::RunRecord;
use super::{execute, ExperimentConfig, ExperimentError, InitSpec, QSchedule};
use crate::dynamics::{OutcomeClass, RunOutcome};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RegimeKind {
    /// `q_N = N^{-1/2}`; success is `Z_min > c' N` at absorption.
    Thm32 { c_prime: f64 },
    /// `1 - q_N = N^{-delta}`; success is connected consensus with minimum
    /// degree at least `kappa N`.
    Thm34 { delta: f64, kappa: f64 },
    /// `K >= 3` opinions at fixed small `q`; success is `Z_min > delta N`.
    Prop45 { k: usize, q: f64, delta: f64 },
}

impl RegimeKind {
    pub fn label(&self) -> &'static str {
        match self {
            RegimeKind::Thm32 { .. } => "thm32",
            RegimeKind::Thm34 { .. } => "thm34",
            RegimeKind::Prop45 { .. } => "prop45",
        }
    }

    fn success(&self, n: usize, o: &RunOutcome) -> bool {
        let n = n as f64;
        match *self {
            RegimeKind::Thm32 { c_prime } => o.z_min_final as f64 > c_prime * n,
            RegimeKind::Thm34 { kappa, .. } => {
                o.outcome_class == OutcomeClass::ConnectedConsensus && o.min_degree_final as f64 >= kappa * n
            }
            RegimeKind::Prop45 { delta, .. } => o.z_min_final as f64 > delta * n,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegimeCheck {
    pub kind: RegimeKind,
    pub n_grid: Vec<usize>,
    pub replicates: u64,
    pub base_seed: u64,
    pub workers: usize,
}

impl RegimeCheck {
    pub fn new(kind: RegimeKind, n_grid: Vec<usize>, replicates: u64, base_seed: u64) -> Self {
        RegimeCheck { kind, n_grid, replicates, base_seed, workers: 1 }
    }

    /// `c' = 1/4` on `N = 128 .. 1024`, 200 replicates.
    pub fn thm32() -> Self {
        Self::new(RegimeKind::Thm32 { c_prime: 0.25 }, vec![128, 256, 512, 1024], 200, 32)
    }

    /// `delta = 1/2`, `kappa = 1/2` at `N = 1024`, 200 replicates.
    pub fn thm34() -> Self {
        Self::new(RegimeKind::Thm34 { delta: 0.5, kappa: 0.5 }, vec![1024], 200, 34)
    }

    /// Three opinions of 171 at `q = 0.05`, `delta = 0.1`, 300 replicates.
    pub fn prop45() -> Self {
        Self::new(RegimeKind::Prop45 { k: 3, q: 0.05, delta: 0.1 }, vec![513], 300, 45)
    }

    /// The sweep this check runs.
    pub fn config(&self) -> ExperimentConfig {
        let (k, schedule) = match self.kind {
            RegimeKind::Thm32 { .. } => (2, QSchedule::InverseSqrt),
            RegimeKind::Thm34 { delta, .. } => (2, QSchedule::OneMinusPower { delta }),
            RegimeKind::Prop45 { k, q, .. } => (k, QSchedule::Constant { q }),
        };
        ExperimentConfig {
            name: self.kind.label().to_string(),
            q_grid: Vec::new(),
            n_grid: self.n_grid.clone(),
            k,
            replicates: self.replicates,
            base_seed: self.base_seed,
            eps: 0.1,
            q_schedule: Some(schedule),
            init: InitSpec::default(),
            workers: self.workers,
            output_dir: PathBuf::from(self.kind.label()),
            step_budget: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegimeRow {
    pub n: usize,
    pub q: f64,
    pub failed: u64,
    pub probability: Proportion,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegimeReport {
    pub kind: RegimeKind,
    pub rows: Vec<RegimeRow>,
    /// Point estimates never decrease along the N ladder.
    pub monotone_nondecreasing: bool,
}

impl RegimeReport {
    pub fn last(&self) -> &RegimeRow {
        self.rows.last().expect("regime report without rows")
    }
}

/// Runs the regime sweep and estimates the success probability at every `N`.
/// Failed runs count as trials without success.
pub fn regime_checks(check: &RegimeCheck) -> Result<RegimeReport, ExperimentError> {
    let config = check.config();
    let records = execute(&config)?;
    Ok(report_from_records(check.kind, &config, &records))
}

pub(crate) fn report_from_records(
    kind: RegimeKind,
    config: &ExperimentConfig,
    records: &[RunRecord],
) -> RegimeReport {
    let rows: Vec<RegimeRow> = config
        .grid()
        .into_iter()
        .map(|p| {
            let cell: Vec<&RunRecord> = records.iter().filter(|r| r.n_index == p.n_index).collect();
            let wins =
                cell.iter().filter(|r| r.outcome.as_ref().is_some_and(|o| kind.success(p.n, o))).count();
            RegimeRow {
                n: p.n,
                q: p.q,
                failed: cell.iter().filter(|r| r.outcome.is_none()).count() as u64,
                probability: Proportion::new(wins as u64, cell.len() as u64),
            }
        })
        .collect();
    let monotone_nondecreasing = rows.windows(2).all(|w| w[1].probability.p_hat >= w[0].probability.p_hat);
    RegimeReport { kind, rows, monotone_nondecreasing }
}
