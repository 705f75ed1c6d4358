//! The delayed model with its deletion graph: the coupling holds at every
//! step, and the jump chain has the law of the direct model.

use offended_voter::delayed::{default_step_budget, jump_chain_equivalence, run_delayed};
use offended_voter::dynamics::ModelParams;

fn main() {
    let (n, q) = (64, 0.5);
    let params = ModelParams::balanced(n, q);
    for seed in 0..5 {
        let (out, rep) = run_delayed(&params, seed, default_step_budget(n, q)).unwrap();
        println!(
            "seed {seed}: {} after {} global steps, {} jumps ({} votes); deletion graph {} edges; violation {:?}",
            out.outcome_class.label(),
            rep.global_steps,
            rep.x_e_count,
            rep.x_op_count,
            rep.deletion_graph_edges,
            rep.first_violation
        );
    }

    let eq = jump_chain_equivalence(6, 0.5, 20_000, 1).unwrap();
    println!(
        "N=6 absorbed-state law, direct vs jump chain: {} categories, TV {:.4}, chi2 p {:.3}",
        eq.categories, eq.total_variation, eq.p_value
    );
}
