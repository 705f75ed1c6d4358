use serde::{Deserialize, Serialize};

use super::{DynamicsError, SimState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OutcomeClass {
    /// Final graph disconnected and at least two opinions survive.
    Segregation,
    /// Final graph disconnected but a single opinion holds globally.
    DisconnectedConsensus,
    /// Final graph connected with a single opinion.
    ConnectedConsensus,
}

impl OutcomeClass {
    pub const ALL: [OutcomeClass; 3] =
        [OutcomeClass::Segregation, OutcomeClass::DisconnectedConsensus, OutcomeClass::ConnectedConsensus];

    pub fn label(self) -> &'static str {
        match self {
            OutcomeClass::Segregation => "segregation",
            OutcomeClass::DisconnectedConsensus => "disconnected_consensus",
            OutcomeClass::ConnectedConsensus => "connected_consensus",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        OutcomeClass::ALL.into_iter().find(|c| c.label() == s)
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub class: OutcomeClass,
    pub eps_consensus: bool,
    /// Every opinion is still present.
    pub strong_segregation: bool,
}

/// Absorbing-state record of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunOutcome {
    pub outcome_class: OutcomeClass,
    pub eps_consensus: bool,
    pub strong_segregation: bool,
    pub tau_abs: u64,
    pub final_opinion_counts: Vec<u32>,
    pub z_min_final: u32,
    /// Descending.
    pub component_sizes: Vec<usize>,
    pub edges_remaining: usize,
    pub min_degree_final: usize,
    pub s_op_final: u64,
    pub s_del_final: u64,
    pub seed: u64,
}

impl RunOutcome {
    /// Size of the `i`-th largest component, 0 if there are fewer.
    pub fn component(&self, i: usize) -> usize {
        self.component_sizes.get(i).copied().unwrap_or(0)
    }

    pub fn surviving_opinions(&self) -> usize {
        self.final_opinion_counts.iter().filter(|&&c| c > 0).count()
    }
}

/// Classifies an absorbed state.
///
/// The almost-consensus flag uses the mass outside the plurality opinion,
/// which is `min(Z, N - Z)` when there are two opinions.
pub fn classify_outcome(state: &SimState, eps: f64) -> Result<Classification, DynamicsError> {
    if !state.is_absorbed() {
        return Err(DynamicsError::NotAbsorbed(state.discordant_count()));
    }
    let sizes = state.graph().connected_components();
    classify_with_components(state, &sizes, eps)
}

pub(crate) fn classify_with_components(
    state: &SimState,
    sizes: &[usize],
    eps: f64,
) -> Result<Classification, DynamicsError> {
    let n = state.n();
    let counts = state.opinion_counts();
    let surviving = counts.iter().filter(|&&c| c > 0).count();
    let connected = sizes.len() <= 1;
    let class = match (connected, surviving) {
        (true, 1) => OutcomeClass::ConnectedConsensus,
        (false, 1) => OutcomeClass::DisconnectedConsensus,
        (false, _) => OutcomeClass::Segregation,
        (true, _) => {
            return Err(DynamicsError::Invariant("connected absorbed graph carries several opinions".into()))
        }
    };
    let outside_plurality = n as u64 - counts.iter().copied().max().unwrap_or(0) as u64;
    let largest = sizes.first().copied().unwrap_or(0);
    let eps_consensus =
        outside_plurality as f64 <= eps * n as f64 && largest as f64 >= (1.0 - eps) * n as f64;
    Ok(Classification { class, eps_consensus, strong_segregation: surviving == counts.len() })
}

/// Every connected component carries a single opinion.
pub fn components_monochromatic(state: &SimState) -> bool {
    let labels = state.graph().component_labels();
    let mut colour: Vec<Option<u8>> = vec![None; state.n()];
    for (v, &c) in labels.iter().enumerate() {
        let o = state.opinion(v as u32);
        match colour[c as usize] {
            None => colour[c as usize] = Some(o),
            Some(prev) if prev != o => return false,
            Some(_) => {}
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::DynamicGraph;

    fn state(g: DynamicGraph, ops: Vec<u8>) -> SimState {
        SimState::from_graph(g, ops, 2).unwrap()
    }

    #[test]
    fn isolated_pair_with_two_opinions_is_segregation() {
        let s = state(DynamicGraph::empty(2), vec![1, 0]);
        let c = classify_outcome(&s, 0.1).unwrap();
        assert_eq!(c.class, OutcomeClass::Segregation);
        assert!(c.strong_segregation);
        assert!(!c.eps_consensus);
    }

    #[test]
    fn two_triangles_one_opinion() {
        let g = DynamicGraph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let s = state(g, vec![0; 6]);
        let c = classify_outcome(&s, 0.1).unwrap();
        assert_eq!(c.class, OutcomeClass::DisconnectedConsensus);
        assert!(!c.eps_consensus);
        assert!(components_monochromatic(&s));
    }

    #[test]
    fn complete_graph_consensus() {
        let s = state(DynamicGraph::complete(5), vec![1; 5]);
        for eps in [1e-9, 0.1, 0.49] {
            let c = classify_outcome(&s, eps).unwrap();
            assert_eq!(c.class, OutcomeClass::ConnectedConsensus);
            assert!(c.eps_consensus);
        }
    }

    #[test]
    fn not_absorbed() {
        let s = state(DynamicGraph::complete(3), vec![0, 1, 1]);
        assert_eq!(classify_outcome(&s, 0.1), Err(DynamicsError::NotAbsorbed(2)));
    }

    #[test]
    fn class_labels_round_trip() {
        for c in OutcomeClass::ALL {
            assert_eq!(OutcomeClass::from_label(c.label()), Some(c));
        }
    }
}
