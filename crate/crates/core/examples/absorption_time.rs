//! Absorption times of segregating runs concentrate around C(N,2)/(1-q).

use offended_voter::dynamics::{run_to_absorption, ModelParams, OutcomeClass};
use offended_voter::rng::derive_seed;
use offended_voter::stats::{mean, median};

fn main() {
    let (n, q) = (256, 0.3);
    let params = ModelParams::balanced(n, q);
    let mut seg = Vec::new();
    let mut other = Vec::new();
    for r in 0..200 {
        let o = run_to_absorption(&params, derive_seed(5, 0, 0, r)).unwrap();
        if o.outcome_class == OutcomeClass::Segregation {
            seg.push(o.tau_abs as f64);
        } else {
            other.push(o.tau_abs as f64);
        }
    }
    let reference = (n * (n - 1) / 2) as f64 / (1.0 - q);
    println!("reference C(N,2)/(1-q) = {reference:.0}");
    println!("segregation runs: {}, median tau {:.0}, mean {:.0}", seg.len(), median(&seg), mean(&seg));
    println!("consensus runs:   {}, median tau {:.0}", other.len(), median(&other));
    println!("median / reference = {:.3}", median(&seg) / reference);
}
