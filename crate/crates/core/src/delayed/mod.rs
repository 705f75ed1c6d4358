//! The delayed formulation of the model and its coupling with the dynamical
//! deletion graph.
//!
//! Each global step samples a uniform pair of distinct vertices among all
//! `C(N, 2)` pairs, then the voting coin `U ~ Bernoulli(q)`. On `U = 0` the
//! pair is removed from the deletion graph, and from the model graph too if it
//! is a discordant edge there. On `U = 1` a discordant pair is resolved by the
//! fair coin `V`. Any other sample leaves the model untouched. The steps where
//! the model moves form a chain with the law of the original model, and the
//! deletion graph, which drops every pair sampled with `U = 0`, always stays
//! a subgraph of the model graph.

mod audit;
mod equivalence;
mod thresholds;

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

pub use audit::{deletion_graph_audit, write_audit_csv, AuditReport, AuditRow};
pub use equivalence::{jump_chain_equivalence, EquivalenceReport};
pub use thresholds::{n1_threshold, n2_threshold, ConnectivityThresholds};

use crate::dynamics::{self, DynamicsError, EventKind, ModelParams, RunOutcome, SimState, StepEvent};
use crate::graph::{DynamicGraph, EdgeKey};
use crate::rng::rng_from_seed;

#[derive(Debug, Error, PartialEq)]
pub enum DelayedError {
    #[error(transparent)]
    Model(#[from] DynamicsError),
    #[error("delayed run did not absorb within {0} steps")]
    BudgetExceeded(u64),
    #[error("threshold diverges for q = 1")]
    DivergentThreshold,
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error("the deletion-graph audit needs a complete initial graph")]
    NonCompleteGraph,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DelayedEvent {
    pub pair: EdgeKey,
    /// The voting coin.
    pub vote: bool,
    /// The pair left the deletion graph in this step.
    pub removed_from_deletion_graph: bool,
    /// The model state changed (`X^e`).
    pub changed: bool,
    /// The model performed an opinion update (`X^op`).
    pub updated: bool,
}

#[derive(Debug, Clone)]
pub struct DelayedState {
    ovm: SimState,
    deletion_graph: DynamicGraph,
    q: f64,
    global_step: u64,
    x_op_count: u64,
    x_e_count: u64,
}

impl DelayedState {
    /// The deletion graph starts as a copy of the initial model graph, which is
    /// the full pair set for the complete-graph start.
    pub fn new(params: &ModelParams) -> Result<Self, DelayedError> {
        let ovm = SimState::new(params)?;
        Ok(DelayedState {
            deletion_graph: ovm.graph().clone(),
            ovm,
            q: params.q,
            global_step: 0,
            x_op_count: 0,
            x_e_count: 0,
        })
    }

    pub fn model(&self) -> &SimState {
        &self.ovm
    }

    pub fn deletion_graph(&self) -> &DynamicGraph {
        &self.deletion_graph
    }

    pub fn global_step(&self) -> u64 {
        self.global_step
    }

    pub fn x_op_count(&self) -> u64 {
        self.x_op_count
    }

    pub fn x_e_count(&self) -> u64 {
        self.x_e_count
    }

    /// One global step. Draw order: the pair (two draws), the voting coin, and
    /// the fair coin only when a discordant pair gets updated.
    pub fn step<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<DelayedEvent, DelayedError> {
        let n = self.ovm.n() as u32;
        if n < 2 {
            return Err(DelayedError::BadParams("need at least two vertices".into()));
        }
        let x = rng.random_range(0..n);
        let mut y = rng.random_range(0..n - 1);
        if y >= x {
            y += 1;
        }
        let pair = EdgeKey::new(x, y).expect("distinct vertices");
        let vote = rng.random_bool(self.q);
        self.global_step += 1;
        let discordant = self.ovm.is_discordant(pair);
        let mut ev =
            DelayedEvent { pair, vote, removed_from_deletion_graph: false, changed: false, updated: false };
        if !vote {
            if self.deletion_graph.has_edge(pair) {
                self.deletion_graph.remove_edge(pair).map_err(DynamicsError::from)?;
                ev.removed_from_deletion_graph = true;
            }
            if discordant {
                self.ovm.apply(StepEvent { kind: EventKind::Deletion, edge: pair })?;
                ev.changed = true;
            }
        } else if discordant {
            let kind =
                if rng.random_bool(0.5) { EventKind::UpdateToFirst } else { EventKind::UpdateToSecond };
            self.ovm.apply(StepEvent { kind, edge: pair })?;
            ev.changed = true;
            ev.updated = true;
        }
        self.x_e_count += u64::from(ev.changed);
        self.x_op_count += u64::from(ev.updated);
        Ok(ev)
    }

    /// Only the sampled pair can change in a step, so checking it after every
    /// step (plus one full check at the start) establishes the subgraph
    /// relation at all times.
    pub fn pair_coupled(&self, pair: EdgeKey) -> bool {
        !self.deletion_graph.has_edge(pair) || self.ovm.graph().has_edge(pair)
    }

    /// Full check that the deletion graph is a subgraph of the model graph.
    pub fn is_subgraph(&self) -> bool {
        self.deletion_graph.edges().items().iter().all(|&e| self.ovm.graph().has_edge(e))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CouplingReport {
    pub global_steps: u64,
    pub x_op_count: u64,
    pub x_e_count: u64,
    pub deletion_graph_edges: usize,
    /// Global step of the first subgraph violation, if any.
    pub first_violation: Option<u64>,
}

/// `50 N^2 / (1 - q)` global steps; unbounded for `q = 1`.
pub fn default_step_budget(n: usize, q: f64) -> u64 {
    if q >= 1.0 {
        return u64::MAX;
    }
    let b = 50.0 * (n * n) as f64 / (1.0 - q);
    if b >= u64::MAX as f64 {
        u64::MAX
    } else {
        b.ceil() as u64
    }
}

/// Runs the delayed model until the model absorbs. The outcome's `tau_abs`
/// counts the steps where the model moved; global time is in the report.
pub fn run_delayed(
    params: &ModelParams,
    seed: u64,
    step_budget: u64,
) -> Result<(RunOutcome, CouplingReport), DelayedError> {
    if step_budget == 0 {
        return Err(DelayedError::BadParams("step budget must be positive".into()));
    }
    let mut state = DelayedState::new(params)?;
    let mut rng = rng_from_seed(seed);
    let mut first_violation = (!state.is_subgraph()).then_some(0);
    while !state.ovm.is_absorbed() {
        if state.global_step >= step_budget {
            return Err(DelayedError::BudgetExceeded(step_budget));
        }
        let ev = state.step(&mut rng)?;
        if first_violation.is_none() && !state.pair_coupled(ev.pair) {
            first_violation = Some(state.global_step);
        }
    }
    if first_violation.is_none() && !state.is_subgraph() {
        first_violation = Some(state.global_step);
    }
    let outcome = dynamics::finish(&state.ovm, params.eps, seed)?;
    let report = CouplingReport {
        global_steps: state.global_step,
        x_op_count: state.x_op_count,
        x_e_count: state.x_e_count,
        deletion_graph_edges: state.deletion_graph.edge_count(),
        first_violation,
    };
    Ok((outcome, report))
}
