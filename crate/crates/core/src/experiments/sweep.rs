use std::fs::{self, File};
use std::io::BufWriter;
use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::aggregate::{aggregate, write_aggregate_csv, AggregateStats};
use super::records::{write_runs_csv, RunRecord, RunStatus};
use super::{ExperimentConfig, ExperimentError};
use crate::dynamics::{run_with, DynamicsError};
use crate::rng::derive_seed;

#[derive(Debug)]
pub struct SweepOutput {
    pub dir: PathBuf,
    pub records: Vec<RunRecord>,
    pub aggregates: Vec<AggregateStats>,
}

#[derive(Serialize)]
struct Manifest<'a> {
    config: &'a ExperimentConfig,
    software_version: &'static str,
    total_wall_time_s: f64,
    runs: usize,
    failed_runs: Vec<FailedRun<'a>>,
}

#[derive(Serialize)]
struct FailedRun<'a> {
    q_index: usize,
    n_index: usize,
    replicate: u64,
    status: RunStatus,
    error: &'a str,
}

/// Runs every replicate of every grid point on a pool of `config.workers`
/// threads. The result is sorted by `(q_index, n_index, replicate)` and does
/// not depend on the worker count.
pub fn execute(config: &ExperimentConfig) -> Result<Vec<RunRecord>, ExperimentError> {
    config.validate()?;
    let jobs: Vec<_> =
        config.grid().into_iter().flat_map(|p| (0..config.replicates).map(move |r| (p, r))).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| ExperimentError::Config(format!("thread pool: {e}")))?;
    let mut records: Vec<RunRecord> = pool.install(|| {
        jobs.par_iter()
            .map(|&(p, r)| {
                let params = config.model_params(&p);
                let seed = derive_seed(config.base_seed, p.q_index as u64, p.n_index as u64, r);
                let start = Instant::now();
                let result = run_with(&params, seed, config.step_budget, None);
                let (status, outcome, error) = match result {
                    Ok(o) => (RunStatus::Ok, Some(o), None),
                    Err(e @ DynamicsError::BudgetExceeded(_)) => {
                        (RunStatus::BudgetExceeded, None, Some(e.to_string()))
                    }
                    Err(e) => (RunStatus::Error, None, Some(e.to_string())),
                };
                RunRecord {
                    q_index: p.q_index,
                    n_index: p.n_index,
                    replicate: r,
                    q: p.q,
                    n: p.n,
                    k: config.k,
                    seed,
                    status,
                    outcome,
                    wall_time: start.elapsed().as_secs_f64(),
                    error,
                }
            })
            .collect()
    });
    records.sort_by_key(|r| (r.q_index, r.n_index, r.replicate));
    Ok(records)
}

/// Executes the sweep and writes `runs.csv`, `aggregate.csv` and
/// `manifest.json` into `config.output_dir`.
pub fn run_sweep(config: &ExperimentConfig) -> Result<SweepOutput, ExperimentError> {
    let start = Instant::now();
    let records = execute(config)?;
    let aggregates = aggregate(config, &records);
    let dir = config.output_dir.clone();
    fs::create_dir_all(&dir)?;
    write_runs_csv(&records, BufWriter::new(File::create(dir.join("runs.csv"))?))?;
    write_aggregate_csv(&aggregates, BufWriter::new(File::create(dir.join("aggregate.csv"))?))?;
    let manifest = Manifest {
        config,
        software_version: env!("CARGO_PKG_VERSION"),
        total_wall_time_s: start.elapsed().as_secs_f64(),
        runs: records.len(),
        failed_runs: records
            .iter()
            .filter(|r| r.status != RunStatus::Ok)
            .map(|r| FailedRun {
                q_index: r.q_index,
                n_index: r.n_index,
                replicate: r.replicate,
                status: r.status,
                error: r.error.as_deref().unwrap_or(""),
            })
            .collect(),
    };
    let text = serde_json::to_string_pretty(&manifest).map_err(|e| ExperimentError::Config(e.to_string()))?;
    fs::write(dir.join("manifest.json"), text + "\n")?;
    Ok(SweepOutput { dir, records, aggregates })
}
