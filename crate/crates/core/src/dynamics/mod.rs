//! The offended voter model: a discordant edge is picked uniformly; with
//! probability `q` its endpoints agree on one of their two opinions (fair
//! coin), otherwise the edge is deleted. Runs until no discordant edge is
//! left.

mod outcome;
mod params;
mod state;
mod walk;

use std::io::Write;

use thiserror::Error;

pub use outcome::{classify_outcome, components_monochromatic, Classification, OutcomeClass, RunOutcome};
pub use params::{InitGraph, InitOpinions, ModelParams};
pub use state::{EventKind, SimState, StepEvent};
pub use walk::{opinion_walk_check, WalkCheck};

use crate::graph::{EdgeKey, GraphError};
use crate::rng::rng_from_seed;

#[derive(Debug, Error, PartialEq)]
pub enum DynamicsError {
    #[error("opinion counts {counts:?} do not describe {n} vertices with {k} opinions")]
    BadCounts { counts: Vec<u32>, n: usize, k: usize },
    #[error("bad initial graph: {0}")]
    BadEdge(GraphError),
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error("no discordant edge left")]
    Absorbed,
    #[error("state not absorbed: {0} discordant edges remain")]
    NotAbsorbed(usize),
    #[error("edge {0} is not discordant")]
    NotDiscordant(EdgeKey),
    #[error("step budget of {0} exhausted before absorption")]
    BudgetExceeded(u64),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("graph error: {0}")]
    Graph(#[from] GraphError),
    #[error("trace output failed: {0}")]
    Trace(String),
}

/// Runs the chain to absorption. A deterministic function of `(params, seed)`.
pub fn run_to_absorption(params: &ModelParams, seed: u64) -> Result<RunOutcome, DynamicsError> {
    run_with(params, seed, None, None)
}

/// Like [`run_to_absorption`] with an optional step budget and an optional
/// per-step trace.
///
/// Trace lines are tab separated: step number, event kind, edge endpoints,
/// comma-separated opinion counts, number of discordant edges after the step.
pub fn run_with(
    params: &ModelParams,
    seed: u64,
    budget: Option<u64>,
    mut trace: Option<&mut dyn Write>,
) -> Result<RunOutcome, DynamicsError> {
    let mut state = SimState::new(params)?;
    let mut rng = rng_from_seed(seed);
    let budget = budget.unwrap_or(u64::MAX);
    while !state.is_absorbed() {
        if state.steps() >= budget {
            return Err(DynamicsError::BudgetExceeded(budget));
        }
        let ev = state.step(params.q, &mut rng)?;
        if let Some(out) = trace.as_deref_mut() {
            write_trace_line(out, &state, &ev).map_err(|e| DynamicsError::Trace(e.to_string()))?;
        }
    }
    finish(&state, params.eps, seed)
}

fn write_trace_line(out: &mut dyn Write, state: &SimState, ev: &StepEvent) -> std::io::Result<()> {
    let counts: Vec<String> = state.opinion_counts().iter().map(u32::to_string).collect();
    writeln!(
        out,
        "{}\t{}\t{}\t{}\t{}\t{}",
        state.steps(),
        ev.kind.label(),
        ev.edge.a(),
        ev.edge.b(),
        counts.join(","),
        state.discordant_count()
    )
}

/// Builds the outcome record of an absorbed state.
pub fn finish(state: &SimState, eps: f64, seed: u64) -> Result<RunOutcome, DynamicsError> {
    if !state.is_absorbed() {
        return Err(DynamicsError::NotAbsorbed(state.discordant_count()));
    }
    let sizes = state.graph().connected_components();
    let c = outcome::classify_with_components(state, &sizes, eps)?;
    if !components_monochromatic(state) {
        return Err(DynamicsError::Invariant("absorbed component carries two opinions".into()));
    }
    Ok(RunOutcome {
        outcome_class: c.class,
        eps_consensus: c.eps_consensus,
        strong_segregation: c.strong_segregation,
        tau_abs: state.steps(),
        final_opinion_counts: state.opinion_counts().to_vec(),
        z_min_final: state.z_min(),
        component_sizes: sizes,
        edges_remaining: state.graph().edge_count(),
        min_degree_final: state.graph().min_degree(),
        s_op_final: state.updates(),
        s_del_final: state.deletions(),
        seed,
    })
}
