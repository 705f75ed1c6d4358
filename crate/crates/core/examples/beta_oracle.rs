//! The limiting tail beta(x) against the exact survival curve of the
//! absorbed walk, and the off-centre domination check.

use offended_voter::asymptotics::{
    beta, offcenter_survival, prop33_bound, srw_exit_survival, theorem31_bound,
};

fn main() {
    let n = 200;
    let xs = [0.01, 0.05, 0.1, 0.2, 0.5, 1.0, 2.0];
    let horizon = (2.0 * (n * n) as f64) as usize;
    let curve = srw_exit_survival(n, n / 2, horizon).unwrap();
    println!("{:>6} {:>12} {:>12} {:>9}", "x", "beta", "DP N=200", "diff");
    for x in xs {
        let b = beta(x, 1e-12).unwrap();
        let dp = curve.at((x * (n * n) as f64) as usize);
        println!("{x:>6} {:>12.8} {dp:>12.8} {:>9.2e}", b.value, (b.value - dp).abs());
    }
    println!("mass error of the DP: {:.1e}", curve.max_mass_error);

    let c = offcenter_survival(100, 30, 0.2).unwrap();
    println!("start 30 vs 50 at x=0.2: {:.5} <= {:.5}: {}", c.offcenter, c.centered, c.dominated);

    for q in [0.1, 0.3, 0.5, 0.7] {
        println!(
            "q={q}: segregation bound {:.4}, eps-consensus bound (eps=1/4) {:.4}",
            theorem31_bound(q, 0.5, 0.0).unwrap(),
            prop33_bound(q, 0.25).unwrap()
        );
    }
}
