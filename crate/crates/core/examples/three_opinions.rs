//! Three opinions make consensus harder: segregation frequency for K=3
//! against K=2 at the same N and q, plus strong segregation.

use offended_voter::dynamics::OutcomeClass;
use offended_voter::experiments::{execute, ExperimentConfig};

fn main() {
    let (n, q, reps) = (129, 0.3, 100);
    for k in [2, 3] {
        let mut c = ExperimentConfig::new("k", vec![q], vec![n], reps, 17);
        c.k = k;
        let records = execute(&c).unwrap();
        let outs: Vec<_> = records.iter().filter_map(|r| r.outcome.as_ref()).collect();
        let seg = outs.iter().filter(|o| o.outcome_class == OutcomeClass::Segregation).count();
        let strong = outs.iter().filter(|o| o.strong_segregation).count();
        let dc = outs.iter().filter(|o| o.outcome_class == OutcomeClass::DisconnectedConsensus).count();
        println!(
            "K={k}: segregation {seg}/{reps}, all opinions survive {strong}, disconnected consensus {dc}"
        );
    }
}
