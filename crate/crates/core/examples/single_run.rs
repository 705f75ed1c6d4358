//! One run of the model on the complete graph, with a short trace.
//!
//!     cargo run --release --example single_run -- 256 0.3 7

use offended_voter::dynamics::{run_with, ModelParams};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: usize = args.first().map_or(256, |s| s.parse().expect("N"));
    let q: f64 = args.get(1).map_or(0.3, |s| s.parse().expect("q"));
    let seed: u64 = args.get(2).map_or(7, |s| s.parse().expect("seed"));

    let params = ModelParams::balanced(n, q);
    let mut trace = Vec::new();
    let out = run_with(&params, seed, None, Some(&mut trace)).unwrap();

    let trace = String::from_utf8(trace).unwrap();
    println!("first steps (step, kind, a, b, counts, discordant):");
    for line in trace.lines().take(5) {
        println!("  {line}");
    }
    println!("outcome      {}", out.outcome_class.label());
    println!("tau_abs      {} ({} updates, {} deletions)", out.tau_abs, out.s_op_final, out.s_del_final);
    println!("final counts {:?}", out.final_opinion_counts);
    println!("components   {:?}", &out.component_sizes[..out.component_sizes.len().min(6)]);
    println!("edges left   {} of {}", out.edges_remaining, n * (n - 1) / 2);
    // the chain needs C(N,2)/(1-q) steps on average when it segregates
    println!("reference    {:.0}", (n * (n - 1) / 2) as f64 / (1.0 - q));
}
