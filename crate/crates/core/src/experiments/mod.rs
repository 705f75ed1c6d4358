//! Sweeps over `(q, N)` grids: seeding, parallel replicates, CSV output,
//! aggregation with Wilson intervals, figure datasets and regime checks.

mod aggregate;
mod config;
mod figures;
mod records;
mod regimes;
mod sweep;

use thiserror::Error;

pub use aggregate::{aggregate, write_aggregate_csv, AggregateStats, AGGREGATE_HEADER};
pub use config::{ExperimentConfig, GridPoint, InitSpec, QSchedule};
pub use figures::{figure_datasets, FigureData};
pub use records::{read_runs_csv, write_runs_csv, RunRecord, RunStatus, RUNS_HEADER};
pub use regimes::{regime_checks, RegimeCheck, RegimeKind, RegimeReport, RegimeRow};
pub use sweep::{execute, run_sweep, SweepOutput};

pub use crate::rng::derive_seed;
pub use crate::stats::wilson_interval;

use crate::dynamics::DynamicsError;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("config error: {0}")]
    Config(String),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("schema mismatch: {0}")]
    SchemaMismatch(String),
}

impl From<DynamicsError> for ExperimentError {
    fn from(e: DynamicsError) -> Self {
        ExperimentError::Config(e.to_string())
    }
}
