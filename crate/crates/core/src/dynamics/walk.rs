use serde::Serialize;

use super::{DynamicsError, ModelParams, SimState};
use crate::rng::rng_from_seed;
use crate::stats::runs_test;

/// Pooled statistics of the opinion-1 count increments on update events.
#[derive(Debug, Clone, Serialize)]
pub struct WalkCheck {
    pub updates: u64,
    pub up_moves: u64,
    pub up_frequency: f64,
    /// Binomial standard error of `up_frequency` under a fair coin.
    pub sigma: f64,
    pub runs_test_z: Option<f64>,
    pub runs_test_p: Option<f64>,
    /// Zero-move updates or deletions that moved the count.
    pub irregular_moves: u64,
    pub passed: bool,
}

/// Runs `runs` replicates of the two-opinion model and checks that the count
/// of opinion 1 moves by exactly +-1 on updates (fair coin, independent
/// signs) and never on deletions. Replicate `i` uses seed `seed + i`.
pub fn opinion_walk_check(params: &ModelParams, runs: u64, seed: u64) -> Result<WalkCheck, DynamicsError> {
    if params.k != 2 {
        return Err(DynamicsError::BadParams("walk check needs K = 2".into()));
    }
    let mut signs = Vec::new();
    let mut irregular = 0u64;
    for r in 0..runs {
        let mut state = SimState::new(params)?;
        let mut rng = rng_from_seed(seed.wrapping_add(r));
        while !state.is_absorbed() {
            let before = state.opinion_counts()[1] as i64;
            let ev = state.step(params.q, &mut rng)?;
            let delta = state.opinion_counts()[1] as i64 - before;
            match (ev.kind.is_update(), delta) {
                (true, 1) => signs.push(true),
                (true, -1) => signs.push(false),
                (false, 0) => {}
                _ => irregular += 1,
            }
        }
    }
    let updates = signs.len() as u64;
    let up_moves = signs.iter().filter(|&&s| s).count() as u64;
    let (up_frequency, sigma) = if updates == 0 {
        (0.5, 0.0)
    } else {
        (up_moves as f64 / updates as f64, (0.25 / updates as f64).sqrt())
    };
    let runs_result = runs_test(&signs);
    let passed = irregular == 0
        && (up_frequency - 0.5).abs() <= 4.0 * sigma
        && runs_result.is_none_or(|(_, p)| p >= 1e-3);
    Ok(WalkCheck {
        updates,
        up_moves,
        up_frequency,
        sigma,
        runs_test_z: runs_result.map(|r| r.0),
        runs_test_p: runs_result.map(|r| r.1),
        irregular_moves: irregular,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_increments_at_n64() {
        let check = opinion_walk_check(&ModelParams::balanced(64, 0.5), 200, 1).unwrap();
        assert!(check.updates > 10_000);
        assert!(check.passed, "{check:?}");
    }

    #[test]
    fn q_zero_is_vacuous() {
        let check = opinion_walk_check(&ModelParams::balanced(16, 0.0), 10, 1).unwrap();
        assert_eq!(check.updates, 0);
        assert!(check.passed);
    }

    #[test]
    fn pair_with_q_one_is_a_fair_coin() {
        let check = opinion_walk_check(&ModelParams::balanced(2, 1.0), 4000, 1).unwrap();
        assert_eq!(check.updates, 4000);
        assert!(check.passed, "{check:?}");
    }

    #[test]
    fn needs_two_opinions() {
        assert!(opinion_walk_check(&ModelParams::balanced(9, 0.5).with_k(3), 1, 1).is_err());
    }
}
