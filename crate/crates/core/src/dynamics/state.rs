use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{DynamicsError, ModelParams};
use crate::graph::{DynamicGraph, EdgeKey, GraphError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EventKind {
    /// Both endpoints end up with the opinion of `edge.a()`.
    UpdateToFirst,
    /// Both endpoints end up with the opinion of `edge.b()`.
    UpdateToSecond,
    Deletion,
}

impl EventKind {
    pub fn label(self) -> &'static str {
        match self {
            EventKind::UpdateToFirst => "update_first",
            EventKind::UpdateToSecond => "update_second",
            EventKind::Deletion => "deletion",
        }
    }

    pub fn is_update(self) -> bool {
        !matches!(self, EventKind::Deletion)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StepEvent {
    pub kind: EventKind,
    pub edge: EdgeKey,
}

/// Mutable state of one run.
///
/// Discordant edges are not stored explicitly. Their number is maintained
/// exactly: when a vertex changes opinion its neighbourhood is scanned once.
/// A uniform discordant edge is drawn by rejection from the indexed set of
/// present edges, which has the same law as drawing from the discordant set
/// directly.
#[derive(Debug, Clone)]
pub struct SimState {
    graph: DynamicGraph,
    opinion: Vec<u8>,
    counts: Vec<u32>,
    discordant: usize,
    initial_edges: usize,
    steps: u64,
    updates: u64,
    deletions: u64,
}

impl SimState {
    pub fn new(params: &ModelParams) -> Result<Self, DynamicsError> {
        params.validate()?;
        let graph = params.initial_graph()?;
        let opinion = params.initial_opinions()?;
        let counts = params.opinion_counts()?;
        Ok(Self::from_parts(graph, opinion, counts))
    }

    /// State from an explicit graph and opinion vector (labels `< k`).
    pub fn from_graph(graph: DynamicGraph, opinion: Vec<u8>, k: usize) -> Result<Self, DynamicsError> {
        if opinion.len() != graph.n() {
            return Err(DynamicsError::BadParams(format!(
                "{} opinions for {} vertices",
                opinion.len(),
                graph.n()
            )));
        }
        let mut counts = vec![0u32; k];
        for &o in &opinion {
            let slot = counts
                .get_mut(o as usize)
                .ok_or_else(|| DynamicsError::BadParams(format!("opinion label {o} not below K = {k}")))?;
            *slot += 1;
        }
        Ok(Self::from_parts(graph, opinion, counts))
    }

    fn from_parts(graph: DynamicGraph, opinion: Vec<u8>, counts: Vec<u32>) -> Self {
        let discordant = count_discordant(&graph, &opinion);
        SimState {
            initial_edges: graph.edge_count(),
            graph,
            opinion,
            counts,
            discordant,
            steps: 0,
            updates: 0,
            deletions: 0,
        }
    }

    pub fn graph(&self) -> &DynamicGraph {
        &self.graph
    }

    pub fn opinions(&self) -> &[u8] {
        &self.opinion
    }

    #[inline]
    pub fn opinion(&self, v: u32) -> u8 {
        self.opinion[v as usize]
    }

    pub fn opinion_counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn n(&self) -> usize {
        self.opinion.len()
    }

    pub fn k(&self) -> usize {
        self.counts.len()
    }

    /// Number of present edges whose endpoints disagree.
    #[inline]
    pub fn discordant_count(&self) -> usize {
        self.discordant
    }

    #[inline]
    pub fn is_absorbed(&self) -> bool {
        self.discordant == 0
    }

    #[inline]
    pub fn is_discordant(&self, e: EdgeKey) -> bool {
        self.graph.has_edge(e) && self.opinion[e.a() as usize] != self.opinion[e.b() as usize]
    }

    /// Smallest opinion count over all labels; `min(Z, N - Z)` for two opinions.
    pub fn z_min(&self) -> u32 {
        self.counts.iter().copied().min().unwrap_or(0)
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn updates(&self) -> u64 {
        self.updates
    }

    pub fn deletions(&self) -> u64 {
        self.deletions
    }

    pub fn initial_edges(&self) -> usize {
        self.initial_edges
    }

    /// Uniform discordant edge, by rejection over present edges.
    #[inline]
    pub fn sample_discordant<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<EdgeKey, DynamicsError> {
        if self.discordant == 0 {
            return Err(DynamicsError::Absorbed);
        }
        loop {
            let e = self.graph.sample_edge(rng).map_err(|_| DynamicsError::Absorbed)?;
            if self.opinion[e.a() as usize] != self.opinion[e.b() as usize] {
                return Ok(e);
            }
        }
    }

    /// One transition of the chain. Draw order: edge, then the voting coin
    /// with success probability `q`, then (on success only) the fair coin that
    /// picks which endpoint's opinion wins.
    pub fn step<R: Rng + ?Sized>(&mut self, q: f64, rng: &mut R) -> Result<StepEvent, DynamicsError> {
        let edge = self.sample_discordant(rng)?;
        let kind = if rng.random_bool(q) {
            if rng.random_bool(0.5) {
                EventKind::UpdateToFirst
            } else {
                EventKind::UpdateToSecond
            }
        } else {
            EventKind::Deletion
        };
        self.apply(StepEvent { kind, edge })?;
        Ok(StepEvent { kind, edge })
    }

    /// Applies an already-drawn event to a discordant edge.
    pub fn apply(&mut self, event: StepEvent) -> Result<(), DynamicsError> {
        let e = event.edge;
        if !self.is_discordant(e) {
            return Err(DynamicsError::NotDiscordant(e));
        }
        match event.kind {
            EventKind::Deletion => self.delete_discordant(e)?,
            EventKind::UpdateToFirst => self.adopt(e.b(), self.opinion(e.a())),
            EventKind::UpdateToSecond => self.adopt(e.a(), self.opinion(e.b())),
        }
        self.steps += 1;
        Ok(())
    }

    pub(crate) fn delete_discordant(&mut self, e: EdgeKey) -> Result<(), GraphError> {
        self.graph.remove_edge(e)?;
        self.discordant -= 1;
        self.deletions += 1;
        Ok(())
    }

    /// Vertex `v` takes opinion `to`.
    pub(crate) fn adopt(&mut self, v: u32, to: u8) {
        let from = self.opinion[v as usize];
        debug_assert_ne!(from, to);
        // edges to `from` neighbours become discordant, edges to `to`
        // neighbours become concordant
        let opinion = &self.opinion;
        let neighbors = self.graph.neighbors(v);
        let n_to = neighbors.iter().filter(|&&w| opinion[w as usize] == to).count();
        let n_from = if self.counts.len() == 2 {
            neighbors.len() - n_to
        } else {
            neighbors.iter().filter(|&&w| opinion[w as usize] == from).count()
        };
        self.discordant = self.discordant + n_from - n_to;
        self.opinion[v as usize] = to;
        self.counts[from as usize] -= 1;
        self.counts[to as usize] += 1;
        self.updates += 1;
    }

    /// Recounts discordant edges from scratch and compares every counter.
    pub fn check_consistency(&self) -> Result<(), String> {
        self.graph.check_consistency()?;
        let recount = count_discordant(&self.graph, &self.opinion);
        if recount != self.discordant {
            return Err(format!("discordant count {} but recount gives {recount}", self.discordant));
        }
        let mut counts = vec![0u32; self.counts.len()];
        for &o in &self.opinion {
            counts[o as usize] += 1;
        }
        if counts != self.counts {
            return Err(format!("opinion counts {:?} vs recount {counts:?}", self.counts));
        }
        if self.updates + self.deletions != self.steps {
            return Err("updates + deletions != steps".into());
        }
        if self.initial_edges - self.graph.edge_count() != self.deletions as usize {
            return Err("deletion counter disagrees with edge count".into());
        }
        Ok(())
    }
}

fn count_discordant(graph: &DynamicGraph, opinion: &[u8]) -> usize {
    graph.edges().items().iter().filter(|e| opinion[e.a() as usize] != opinion[e.b() as usize]).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_from_seed;

    #[test]
    fn initial_discordance() {
        let s = SimState::new(&ModelParams::balanced(4, 0.5)).unwrap();
        assert_eq!(s.opinion_counts(), &[2, 2]);
        assert_eq!(s.discordant_count(), 4);

        let p = ModelParams::balanced(1026, 0.3).with_counts(vec![342, 342, 342]);
        let s = SimState::new(&p).unwrap();
        assert_eq!(s.discordant_count(), 350_892);
    }

    #[test]
    fn q_zero_always_deletes() {
        let mut rng = rng_from_seed(3);
        let mut s = SimState::new(&ModelParams::balanced(10, 0.0)).unwrap();
        while !s.is_absorbed() {
            assert_eq!(s.step(0.0, &mut rng).unwrap().kind, EventKind::Deletion);
        }
        assert_eq!(s.opinion_counts(), &[5, 5]);
        s.check_consistency().unwrap();
    }

    #[test]
    fn q_one_pair_reaches_consensus_in_one_step() {
        let mut rng = rng_from_seed(5);
        let mut s = SimState::new(&ModelParams::balanced(2, 1.0)).unwrap();
        let ev = s.step(1.0, &mut rng).unwrap();
        assert!(ev.kind.is_update());
        assert!(s.is_absorbed());
        assert_eq!(s.graph().edge_count(), 1);
        assert_eq!(s.step(1.0, &mut rng), Err(DynamicsError::Absorbed));
    }

    #[test]
    fn event_frequencies_match_q() {
        let q = 0.3;
        let base = SimState::new(&ModelParams::balanced(6, q)).unwrap();
        let mut rng = rng_from_seed(11);
        let trials = 100_000;
        let mut counts = [0usize; 3];
        for _ in 0..trials {
            let mut s = base.clone();
            let i = match s.step(q, &mut rng).unwrap().kind {
                EventKind::UpdateToFirst => 0,
                EventKind::UpdateToSecond => 1,
                EventKind::Deletion => 2,
            };
            counts[i] += 1;
        }
        for (c, p) in counts.iter().zip([q / 2.0, q / 2.0, 1.0 - q]) {
            let sigma = (trials as f64 * p * (1.0 - p)).sqrt();
            assert!((*c as f64 - p * trials as f64).abs() <= 4.0 * sigma, "{counts:?}");
        }
    }

    #[test]
    fn directed_copy_equals_both_adopt_form() {
        // On a discordant edge {a, b} with two opinions, "b copies a" and
        // "a copies b" are exactly "both adopt o(a)" and "both adopt o(b)",
        // so the fair coin yields each common opinion with probability q/2.
        let q = 0.6;
        let base = SimState::new(&ModelParams::balanced(2, q)).unwrap();
        let mut rng = rng_from_seed(99);
        let trials = 50_000;
        let mut both_one = 0usize;
        let mut both_zero = 0usize;
        for _ in 0..trials {
            let mut s = base.clone();
            let ev = s.step(q, &mut rng).unwrap();
            let (oa, ob) = (s.opinion(ev.edge.a()), s.opinion(ev.edge.b()));
            if ev.kind.is_update() {
                assert_eq!(oa, ob);
                let winner = match ev.kind {
                    EventKind::UpdateToFirst => base.opinion(ev.edge.a()),
                    _ => base.opinion(ev.edge.b()),
                };
                assert_eq!(oa, winner);
                if oa == 1 {
                    both_one += 1;
                } else {
                    both_zero += 1;
                }
            }
        }
        let p = q / 2.0;
        let sigma = (trials as f64 * p * (1.0 - p)).sqrt();
        for c in [both_one, both_zero] {
            assert!((c as f64 - p * trials as f64).abs() <= 4.0 * sigma);
        }
    }

    #[test]
    fn counters_stay_consistent_on_small_runs() {
        for seed in 0..20 {
            let q = 0.1 + 0.04 * seed as f64;
            let p = ModelParams::balanced(12, q).with_k(2 + (seed as usize % 3));
            let mut s = SimState::new(&p).unwrap();
            let mut rng = rng_from_seed(seed);
            while !s.is_absorbed() {
                let before = s.opinion_counts().to_vec();
                let ev = s.step(q, &mut rng).unwrap();
                s.check_consistency().unwrap();
                let moved: i64 =
                    before.iter().zip(s.opinion_counts()).map(|(&a, &b)| (a as i64 - b as i64).abs()).sum();
                assert_eq!(moved, if ev.kind.is_update() { 2 } else { 0 });
                // |D| >= Zmin (Dmin - Zmin) whenever Dmin >= Zmin
                let (zmin, dmin) = (s.z_min() as usize, s.graph().min_degree());
                if dmin >= zmin && s.k() == 2 {
                    assert!(s.discordant_count() >= zmin * (dmin - zmin));
                }
            }
        }
    }

    #[test]
    fn apply_rejects_concordant_edge() {
        let mut s = SimState::new(&ModelParams::balanced(4, 0.5)).unwrap();
        let e = EdgeKey::new(0, 1).unwrap();
        assert_eq!(
            s.apply(StepEvent { kind: EventKind::Deletion, edge: e }),
            Err(DynamicsError::NotDiscordant(e))
        );
    }
}
