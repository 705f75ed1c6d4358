use offended_voter::asymptotics::{
    beta_value, deletion_bound_monte_carlo, deletion_bound_probability, negative_binomial_tail,
    srw_exit_survival, theorem31_bound, DeletionBoundParams,
};

#[test]
fn dp_matches_beta_at_n200() {
    let n = 200;
    let nn = (n * n) as f64;
    let curve = srw_exit_survival(n, 100, nn as usize).unwrap();
    assert!(curve.max_mass_error < 1e-12);
    for x in [0.05, 0.1, 0.2, 0.5, 1.0] {
        let dp = curve.at((x * nn).floor() as usize);
        assert!((dp - beta_value(x)).abs() <= 0.01, "x = {x}: {dp} vs {}", beta_value(x));
    }
}

#[test]
fn long_horizon_kills_survival() {
    let n = 100;
    let curve = srw_exit_survival(n, 50, 20 * n * n).unwrap();
    assert!(curve.at(20 * n * n) <= 1e-3);
    assert!(curve.probabilities.windows(2).all(|w| w[1] <= w[0] + 1e-15));
}

#[test]
fn segregation_bound_at_q03_against_mpmath() {
    // mpmath: 4/pi * sum_j (-1)^j/(2j+1) exp(-pi^2 (2j+1)^2 x / 2), x = 0.3/1.4
    assert!((theorem31_bound(0.3, 0.5, 0.0).unwrap() - 0.4422129364428534).abs() < 1e-10);
}

#[test]
fn monte_carlo_agrees_with_exact_tail() {
    for (r, seed) in [(1.01, 1), (1.03, 2), (1.1, 3)] {
        let p = DeletionBoundParams::new(128, 0.3, r).unwrap();
        let exact = deletion_bound_probability(&p);
        let mc = deletion_bound_monte_carlo(&p, 10_000, seed);
        let se = (exact * (1.0 - exact) / 1e4).sqrt().max(1e-4);
        assert!((mc.estimate - exact).abs() <= 3.0 * se, "r = {r}: {} vs {exact}", mc.estimate);
    }
}

#[test]
fn threshold_below_the_mean_drives_tail_to_zero() {
    // k successes at p = 0.3: mean failures k * 0.7 / 0.3; ask for 1.2x that
    let k = 50_000u64;
    let mean = k as f64 * 0.7 / 0.3;
    assert!(negative_binomial_tail(k, 0.3, (1.2 * mean) as u64) < 1e-12);
    assert!(negative_binomial_tail(k, 0.3, (0.8 * mean) as u64) > 1.0 - 1e-12);
}
