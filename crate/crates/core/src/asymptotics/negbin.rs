use rand::Rng;
use serde::Serialize;
use statrs::function::gamma::ln_gamma;

use super::AsymptoticsError;
use crate::rng::rng_from_seed;
use crate::stats::normal_sf;

/// Above this many required successes the tail is taken from the normal
/// approximation instead of the incomplete beta function.
pub const EXACT_MAX_SUCCESSES: u64 = 1_000_000;

const CF_MAX_ITER: usize = 1_000_000;
const CF_EPS: f64 = 1e-15;
const TINY: f64 = 1e-300;

/// Opinion updates versus deletions: with voting probability `q` and
/// `alpha = max(q, 1/N)`, wait for `k_N = ceil(r alpha / (1-q) * N^2 / 2)`
/// updates and ask whether at least `N^2 / 2` deletions happened by then.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeletionBoundParams {
    pub n: usize,
    pub q: f64,
    pub r: f64,
}

impl DeletionBoundParams {
    pub fn new(n: usize, q: f64, r: f64) -> Result<Self, AsymptoticsError> {
        if !(r > 1.0) {
            return Err(AsymptoticsError::BadR(r));
        }
        if !(q > 0.0 && q < 1.0) || n == 0 {
            return Err(AsymptoticsError::BadParams(format!(
                "need 0 < q < 1 and N > 0, got q = {q}, N = {n}"
            )));
        }
        Ok(DeletionBoundParams { n, q, r })
    }

    pub fn alpha(&self) -> f64 {
        self.q.max(1.0 / self.n as f64)
    }

    pub fn k_n(&self) -> u64 {
        let nn = (self.n * self.n) as f64;
        ((self.r * self.alpha() / (1.0 - self.q) * nn / 2.0).ceil() as u64).max(1)
    }

    /// Smallest integer deletion count that is at least `N^2 / 2`.
    pub fn deletion_threshold(&self) -> u64 {
        ((self.n * self.n) as u64).div_ceil(2)
    }
}

/// `P(X >= N^2/2)` where `X` counts failures before the `k_N`-th success in
/// Bernoulli(`q`) trials.
pub fn deletion_bound_probability(p: &DeletionBoundParams) -> f64 {
    negative_binomial_tail(p.k_n(), p.q, p.deletion_threshold())
}

/// `P(X >= m)` for `X` the number of failures before the `k`-th success with
/// success probability `p`. Exact through `I_{1-p}(m, k)` up to
/// [`EXACT_MAX_SUCCESSES`], continuity-corrected normal approximation beyond.
pub fn negative_binomial_tail(k: u64, p: f64, m: u64) -> f64 {
    if m == 0 {
        return 1.0;
    }
    if p >= 1.0 {
        return 0.0;
    }
    if p <= 0.0 {
        return 1.0;
    }
    if k > EXACT_MAX_SUCCESSES {
        let mean = k as f64 * (1.0 - p) / p;
        let sd = (k as f64 * (1.0 - p)).sqrt() / p;
        return normal_sf((m as f64 - 0.5 - mean) / sd);
    }
    regularized_incomplete_beta(m as f64, k as f64, 1.0 - p)
}

/// `I_x(a, b)` by the continued fraction, evaluated on whichever side of the
/// mean converges fastest.
pub fn regularized_incomplete_beta(a: f64, b: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let ln_front = a * x.ln() + b * (1.0 - x).ln() + ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b);
    if x < (a + 1.0) / (a + b + 2.0) {
        (ln_front.exp() * beta_cf(a, b, x) / a).clamp(0.0, 1.0)
    } else {
        (1.0 - ln_front.exp() * beta_cf(b, a, 1.0 - x) / b).clamp(0.0, 1.0)
    }
}

// modified Lentz evaluation of the incomplete beta continued fraction
fn beta_cf(a: f64, b: f64, x: f64) -> f64 {
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=CF_MAX_ITER {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < CF_EPS {
            break;
        }
    }
    h
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct MonteCarloTail {
    pub trials: u64,
    pub hits: u64,
    pub estimate: f64,
}

/// Direct simulation: per trial, draw Bernoulli(`q`) coins until `k_N`
/// successes and record whether the failures reached `N^2 / 2`.
pub fn deletion_bound_monte_carlo(p: &DeletionBoundParams, trials: u64, seed: u64) -> MonteCarloTail {
    let mut rng = rng_from_seed(seed);
    let k = p.k_n();
    let threshold = p.deletion_threshold();
    let mut hits = 0;
    for _ in 0..trials {
        let (mut successes, mut failures) = (0u64, 0u64);
        while successes < k && failures < threshold {
            if rng.random_bool(p.q) {
                successes += 1;
            } else {
                failures += 1;
            }
        }
        hits += u64::from(failures >= threshold);
    }
    MonteCarloTail { trials, hits, estimate: hits as f64 / trials as f64 }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Independent route: X >= m iff fewer than k successes occur in the first
    // k + m - 1 trials. Sums binomial probabilities with a log-space
    // recursion, no gamma function or continued fraction involved.
    fn tail_by_binomial_sum(k: u64, p: f64, m: u64) -> f64 {
        let n = k + m - 1;
        let log_ratio = (p / (1.0 - p)).ln();
        let mut log_pmf = n as f64 * (1.0 - p).ln();
        let mut terms = Vec::with_capacity(k as usize);
        for i in 0..k {
            terms.push(log_pmf);
            log_pmf += ((n - i) as f64 / (i + 1) as f64).ln() + log_ratio;
        }
        let top = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        (top.exp() * terms.iter().map(|t| (t - top).exp()).sum::<f64>()).min(1.0)
    }

    #[test]
    fn matches_binomial_sum_oracle() {
        let cases = [(5, 0.3, 4), (40, 0.5, 40), (300, 0.2, 1300), (3862, 0.3, 9011), (1000, 0.9, 80)];
        for (k, p, m) in cases {
            let exact = negative_binomial_tail(k, p, m);
            let oracle = tail_by_binomial_sum(k, p, m);
            assert!((exact - oracle).abs() < 1e-10, "k={k} p={p} m={m}: {exact} vs {oracle}");
        }
    }

    #[test]
    fn small_case_by_enumeration() {
        // k = 1: X is geometric, P(X >= m) = (1-p)^m
        for m in 1..6 {
            let want = 0.7f64.powi(m);
            assert!((negative_binomial_tail(1, 0.3, m as u64) - want).abs() < 1e-14);
        }
        assert_eq!(negative_binomial_tail(3, 0.3, 0), 1.0);
    }

    #[test]
    fn lemma_parameters_at_n512() {
        let p = DeletionBoundParams::new(512, 0.3, 1.1).unwrap();
        assert_eq!(p.deletion_threshold(), 131_072);
        let v = deletion_bound_probability(&p);
        assert!(v >= 0.999, "{v}");
    }

    #[test]
    fn threshold_above_mean_goes_to_zero() {
        // same k_N but asking for 1.2x the mean number of deletions
        let p = DeletionBoundParams::new(512, 0.3, 1.1).unwrap();
        let k = p.k_n();
        let mean = k as f64 * 0.7 / 0.3;
        let v = negative_binomial_tail(k, 0.3, (1.2 * mean) as u64);
        assert!(v < 1e-6);
    }

    #[test]
    fn bad_r() {
        assert_eq!(DeletionBoundParams::new(512, 0.3, 1.0), Err(AsymptoticsError::BadR(1.0)));
        assert_eq!(DeletionBoundParams::new(512, 0.3, 0.9), Err(AsymptoticsError::BadR(0.9)));
    }

    #[test]
    fn normal_branch_is_close_to_exact_at_the_cutoff() {
        let k = EXACT_MAX_SUCCESSES;
        let p = 0.4;
        let mean = k as f64 * 0.6 / 0.4;
        let m = (mean - 1000.0) as u64;
        let exact = negative_binomial_tail(k, p, m);
        let approx = negative_binomial_tail(k + 1, p, m);
        assert!((exact - approx).abs() < 5e-3, "{exact} vs {approx}");
    }

    #[test]
    fn monte_carlo_near_the_mean() {
        // threshold placed at the mean so the tail is far from 0 and 1
        let k = 200u64;
        let p = 0.3;
        let mean = (k as f64 * 0.7 / 0.3).round() as u64;
        let exact = negative_binomial_tail(k, p, mean);
        let mut rng = rng_from_seed(5);
        let trials = 20_000;
        let mut hits = 0;
        for _ in 0..trials {
            let (mut s, mut f) = (0, 0);
            while s < k {
                if rng.random_bool(p) {
                    s += 1
                } else {
                    f += 1
                }
            }
            hits += u64::from(f >= mean);
        }
        let est = hits as f64 / trials as f64;
        let se = (exact * (1.0 - exact) / trials as f64).sqrt();
        assert!((est - exact).abs() <= 4.0 * se, "{est} vs {exact}");
    }
}
