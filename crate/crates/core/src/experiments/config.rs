use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::ExperimentError;
use crate::dynamics::{InitGraph, InitOpinions, ModelParams};

/// How the voting probability depends on `N` when no explicit grid is given.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum QSchedule {
    Constant {
        q: f64,
    },
    /// `q_N = N^{-1/2}`.
    InverseSqrt,
    /// `1 - q_N = N^{-delta}`.
    OneMinusPower {
        delta: f64,
    },
}

impl QSchedule {
    pub fn q_for(&self, n: usize) -> f64 {
        match *self {
            QSchedule::Constant { q } => q,
            QSchedule::InverseSqrt => 1.0 / (n as f64).sqrt(),
            QSchedule::OneMinusPower { delta } => 1.0 - (n as f64).powf(-delta),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InitSpec {
    pub opinions: InitOpinions,
    pub graph: InitGraph,
}

impl Default for InitSpec {
    fn default() -> Self {
        InitSpec { opinions: InitOpinions::Balanced, graph: InitGraph::Complete }
    }
}

fn default_k() -> usize {
    2
}

fn default_eps() -> f64 {
    0.1
}

fn default_workers() -> usize {
    1
}

/// A parameter sweep. Mirrors the JSON config file field for field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub name: String,
    #[serde(default)]
    pub q_grid: Vec<f64>,
    pub n_grid: Vec<usize>,
    #[serde(default = "default_k", alias = "K")]
    pub k: usize,
    pub replicates: u64,
    pub base_seed: u64,
    #[serde(default = "default_eps")]
    pub eps: f64,
    #[serde(default)]
    pub q_schedule: Option<QSchedule>,
    #[serde(default)]
    pub init: InitSpec,
    #[serde(default = "default_workers")]
    pub workers: usize,
    pub output_dir: PathBuf,
    /// Optional per-run step cap; runs hitting it are recorded as failed rows.
    #[serde(default)]
    pub step_budget: Option<u64>,
}

/// One `(q, N)` cell of a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub q_index: usize,
    pub n_index: usize,
    pub q: f64,
    pub n: usize,
}

impl ExperimentConfig {
    pub fn new(name: &str, q_grid: Vec<f64>, n_grid: Vec<usize>, replicates: u64, base_seed: u64) -> Self {
        ExperimentConfig {
            name: name.to_string(),
            q_grid,
            n_grid,
            k: 2,
            replicates,
            base_seed,
            eps: default_eps(),
            q_schedule: None,
            init: InitSpec::default(),
            workers: 1,
            output_dir: PathBuf::from(name),
            step_budget: None,
        }
    }

    pub fn from_json_file(path: &Path) -> Result<Self, ExperimentError> {
        let text = std::fs::read_to_string(path)?;
        let config: ExperimentConfig = serde_json::from_str(&text)
            .map_err(|e| ExperimentError::Config(format!("{}: {e}", path.display())))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        let bad = |m: String| Err(ExperimentError::Config(m));
        if self.replicates == 0 {
            return bad("replicates must be at least 1".into());
        }
        if self.n_grid.is_empty() {
            return bad("n_grid is empty".into());
        }
        match (&self.q_schedule, self.q_grid.is_empty()) {
            (Some(_), false) => return bad("q_grid and q_schedule are mutually exclusive".into()),
            (None, true) => return bad("q_grid is empty and no q_schedule given".into()),
            _ => {}
        }
        if self.workers == 0 {
            return bad("workers must be at least 1".into());
        }
        for p in self.grid() {
            self.model_params(&p).validate()?;
        }
        Ok(())
    }

    /// Grid points in `(q_index, n_index)` order. Under a schedule there is a
    /// single q index.
    pub fn grid(&self) -> Vec<GridPoint> {
        let mut points = Vec::new();
        match &self.q_schedule {
            Some(rule) => {
                for (n_index, &n) in self.n_grid.iter().enumerate() {
                    points.push(GridPoint { q_index: 0, n_index, q: rule.q_for(n), n });
                }
            }
            None => {
                for (q_index, &q) in self.q_grid.iter().enumerate() {
                    for (n_index, &n) in self.n_grid.iter().enumerate() {
                        points.push(GridPoint { q_index, n_index, q, n });
                    }
                }
            }
        }
        points
    }

    pub fn model_params(&self, p: &GridPoint) -> ModelParams {
        ModelParams {
            n: p.n,
            k: self.k,
            q: p.q,
            eps: self.eps,
            init_opinions: self.init.opinions.clone(),
            init_graph: self.init.graph.clone(),
        }
    }
}
