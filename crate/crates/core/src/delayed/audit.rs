use std::io::Write;

use serde::Serialize;

use super::{n2_threshold, DelayedError, DelayedState};
use crate::dynamics::ModelParams;
use crate::format::{float, opt_int};
use crate::graph::EdgeKey;
use crate::rng::{derive_seed, rng_from_seed};

#[derive(Debug, Clone, Serialize)]
pub struct AuditRow {
    pub run: u64,
    pub seed: u64,
    /// Global steps simulated: `floor(n2)` unless the model absorbed earlier.
    pub steps: u64,
    pub connected: bool,
    pub min_degree: usize,
    pub pass: bool,
    /// First global step at which the deletion graph was disconnected or had
    /// a vertex of degree below `kappa N`.
    pub first_violation_step: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditReport {
    pub n: usize,
    pub q: f64,
    pub kappa: f64,
    pub eps: f64,
    pub n2: f64,
    pub rows: Vec<AuditRow>,
    pub pass_rate: f64,
}

/// For each run, simulates the coupled system up to `min(floor(n2), absorption)`
/// and records whether the deletion graph stayed connected with minimum degree
/// at least `kappa N` the whole time. Both properties can only be lost as
/// edges disappear, so the state at the last step decides the run; the first
/// violation time is recovered afterwards.
pub fn deletion_graph_audit(
    params: &ModelParams,
    kappa: f64,
    eps: f64,
    runs: u64,
    seed: u64,
) -> Result<AuditReport, DelayedError> {
    if !params.is_complete_graph() {
        return Err(DelayedError::NonCompleteGraph);
    }
    let n2 = n2_threshold(params.n, kappa, eps, params.q)?;
    let horizon = n2.floor() as u64;
    let degree_floor = kappa * params.n as f64;
    let mut rows = Vec::with_capacity(runs as usize);
    for run in 0..runs {
        let seed = derive_seed(seed, 0, 0, run);
        let mut state = DelayedState::new(params)?;
        let mut rng = rng_from_seed(seed);
        let mut removed: Vec<(u64, EdgeKey)> = Vec::new();
        let mut degree_violation = ((state.deletion_graph.min_degree() as f64) < degree_floor).then_some(0);
        while state.global_step < horizon && !state.model().is_absorbed() {
            let ev = state.step(&mut rng)?;
            if ev.removed_from_deletion_graph {
                removed.push((state.global_step, ev.pair));
                if degree_violation.is_none() {
                    let g = &state.deletion_graph;
                    let low = g.degree(ev.pair.a()).min(g.degree(ev.pair.b()));
                    if (low as f64) < degree_floor {
                        degree_violation = Some(state.global_step);
                    }
                }
            }
        }
        let g = &state.deletion_graph;
        let connected = g.is_connected();
        let split =
            if connected { None } else { Some(first_disconnection(g.n(), g.edges().items(), &removed)) };
        let first_violation_step = match (degree_violation, split) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        rows.push(AuditRow {
            run,
            seed,
            steps: state.global_step,
            connected,
            min_degree: g.min_degree(),
            pass: first_violation_step.is_none(),
            first_violation_step,
        });
    }
    let passed = rows.iter().filter(|r| r.pass).count();
    Ok(AuditReport {
        n: params.n,
        q: params.q,
        kappa,
        eps,
        n2,
        pass_rate: if runs == 0 { f64::NAN } else { passed as f64 / runs as f64 },
        rows,
    })
}

// Re-adds removed edges to the final graph, latest first, until it becomes
// connected; the removal just undone is the one that first split the graph.
fn first_disconnection(n: usize, remaining: &[EdgeKey], removed: &[(u64, EdgeKey)]) -> u64 {
    let mut parent: Vec<u32> = (0..n as u32).collect();
    fn find(parent: &mut [u32], mut v: u32) -> u32 {
        while parent[v as usize] != v {
            let up = parent[parent[v as usize] as usize];
            parent[v as usize] = up;
            v = up;
        }
        v
    }
    let mut components = n;
    let mut union = |parent: &mut Vec<u32>, e: EdgeKey| {
        let (a, b) = (find(parent, e.a()), find(parent, e.b()));
        if a != b {
            parent[a as usize] = b;
            components -= 1;
        }
        components
    };
    for &e in remaining {
        union(&mut parent, e);
    }
    for &(step, e) in removed.iter().rev() {
        if union(&mut parent, e) == 1 {
            return step;
        }
    }
    0
}

/// Rows `N,q,kappa,eps,n2,pass,first_violation_step`, one per run.
pub fn write_audit_csv<W: Write>(report: &AuditReport, mut out: W) -> std::io::Result<()> {
    writeln!(out, "N,q,kappa,eps,n2,pass,first_violation_step")?;
    for row in &report.rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            report.n,
            float(report.q),
            float(report.kappa),
            float(report.eps),
            float(report.n2),
            row.pass,
            opt_int(row.first_violation_step)
        )?;
    }
    Ok(())
}
