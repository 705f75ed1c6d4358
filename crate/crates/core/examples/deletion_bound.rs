//! The number of deletions before k_N votes is negative binomial; its tail
//! by the incomplete beta function against literal coin flipping.

use offended_voter::asymptotics::{
    deletion_bound_monte_carlo, deletion_bound_probability, DeletionBoundParams,
};

fn main() {
    let p = DeletionBoundParams::new(512, 0.3, 1.1).unwrap();
    println!(
        "N=512 q=0.3 r=1.1: k_N = {}, P(at least N^2/2 deletions) = {:.10}",
        p.k_n(),
        deletion_bound_probability(&p)
    );

    for r in [1.001, 1.01, 1.05] {
        let p = DeletionBoundParams::new(128, 0.3, r).unwrap();
        let exact = deletion_bound_probability(&p);
        let mc = deletion_bound_monte_carlo(&p, 10_000, 3);
        let se = (exact * (1.0 - exact) / 1e4).sqrt();
        println!(
            "N=128 r={r}: exact {exact:.4}, monte carlo {:.4} ({:+.2} SE)",
            mc.estimate,
            (mc.estimate - exact) / se
        );
    }
}
