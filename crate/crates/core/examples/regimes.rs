//! The two scaling regimes on a reduced ladder: vanishing q keeps both
//! opinions, q close to 1 yields a dense consensus graph.

use offended_voter::experiments::{regime_checks, RegimeCheck, RegimeKind};

fn main() {
    let checks = [
        RegimeCheck::new(RegimeKind::Thm32 { c_prime: 0.25 }, vec![64, 128, 256], 100, 1),
        RegimeCheck::new(RegimeKind::Thm34 { delta: 0.5, kappa: 0.5 }, vec![64, 128, 256], 100, 2),
    ];
    for check in &checks {
        let rep = regime_checks(check).unwrap();
        println!("{}:", check.kind.label());
        for row in &rep.rows {
            let p = &row.probability;
            println!("  N={:<5} q={:.4}  {:.3} [{:.3}, {:.3}]", row.n, row.q, p.p_hat, p.ci_lo, p.ci_hi);
        }
        println!("  non-decreasing: {}", rep.monotone_nondecreasing);
    }
}
