use serde::{Deserialize, Serialize};

use super::DynamicsError;
use crate::graph::DynamicGraph;

/// Initial opinion assignment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitOpinions {
    /// `floor(N/K)` per opinion, the remainder going to the lowest labels.
    /// For `K = 2` opinion 1 therefore holds `floor(N/2)` vertices.
    Balanced,
    /// Explicit count per opinion label `0..K`.
    Counts(Vec<u32>),
}

/// Initial population graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitGraph {
    Complete,
    /// 0-based vertex pairs.
    Edges(Vec<(u32, u32)>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub n: usize,
    pub k: usize,
    /// Voting probability.
    pub q: f64,
    /// Almost-consensus threshold.
    pub eps: f64,
    pub init_opinions: InitOpinions,
    pub init_graph: InitGraph,
}

impl ModelParams {
    /// Two opinions, balanced, complete initial graph.
    pub fn balanced(n: usize, q: f64) -> Self {
        ModelParams {
            n,
            k: 2,
            q,
            eps: 0.1,
            init_opinions: InitOpinions::Balanced,
            init_graph: InitGraph::Complete,
        }
    }

    pub fn with_k(mut self, k: usize) -> Self {
        self.k = k;
        self
    }

    pub fn with_counts(mut self, counts: Vec<u32>) -> Self {
        self.k = counts.len();
        self.init_opinions = InitOpinions::Counts(counts);
        self
    }

    pub fn with_edges(mut self, edges: Vec<(u32, u32)>) -> Self {
        self.init_graph = InitGraph::Edges(edges);
        self
    }

    pub fn with_eps(mut self, eps: f64) -> Self {
        self.eps = eps;
        self
    }

    pub fn validate(&self) -> Result<(), DynamicsError> {
        if self.n == 0 {
            return Err(DynamicsError::BadParams("N must be positive".into()));
        }
        if self.n > u32::MAX as usize / 2 {
            return Err(DynamicsError::BadParams(format!("N = {} is too large", self.n)));
        }
        if !(2..=u8::MAX as usize).contains(&self.k) {
            return Err(DynamicsError::BadParams(format!("K = {} outside [2, 255]", self.k)));
        }
        if !(0.0..=1.0).contains(&self.q) {
            return Err(DynamicsError::BadParams(format!("q = {} outside [0, 1]", self.q)));
        }
        if !(self.eps > 0.0 && self.eps < 0.5) {
            return Err(DynamicsError::BadParams(format!("eps = {} outside (0, 1/2)", self.eps)));
        }
        self.opinion_counts().map(|_| ())
    }

    /// Initial count per opinion label.
    pub fn opinion_counts(&self) -> Result<Vec<u32>, DynamicsError> {
        match &self.init_opinions {
            InitOpinions::Balanced => {
                let base = (self.n / self.k) as u32;
                let extra = self.n % self.k;
                Ok((0..self.k).map(|label| base + u32::from(label < extra)).collect())
            }
            InitOpinions::Counts(counts) => {
                let total: u64 = counts.iter().map(|&c| c as u64).sum();
                if counts.len() != self.k || total != self.n as u64 {
                    return Err(DynamicsError::BadCounts { counts: counts.clone(), n: self.n, k: self.k });
                }
                Ok(counts.clone())
            }
        }
    }

    /// Opinion label per vertex, assigned in contiguous blocks by index.
    pub fn initial_opinions(&self) -> Result<Vec<u8>, DynamicsError> {
        let counts = self.opinion_counts()?;
        let mut opinion = Vec::with_capacity(self.n);
        for (label, &c) in counts.iter().enumerate() {
            opinion.extend(std::iter::repeat_n(label as u8, c as usize));
        }
        Ok(opinion)
    }

    pub fn initial_graph(&self) -> Result<DynamicGraph, DynamicsError> {
        match &self.init_graph {
            InitGraph::Complete => Ok(DynamicGraph::complete(self.n)),
            InitGraph::Edges(edges) => {
                DynamicGraph::from_edges(self.n, edges).map_err(DynamicsError::BadEdge)
            }
        }
    }

    pub fn is_complete_graph(&self) -> bool {
        matches!(self.init_graph, InitGraph::Complete)
    }
}
