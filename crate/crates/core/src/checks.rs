//! Self-checks shared by the `ovm check` command: each returns named
//! pass/fail lines with the measured numbers.

use std::fmt;

use crate::asymptotics::{
    beta_value, deletion_bound_monte_carlo, deletion_bound_probability, srw_exit_survival,
    DeletionBoundParams,
};
use crate::delayed::{default_step_budget, jump_chain_equivalence, run_delayed};
use crate::dynamics::{opinion_walk_check, run_to_absorption, ModelParams, OutcomeClass};
use crate::experiments::{regime_checks, RegimeCheck};
use crate::rng::derive_seed;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckLine {
    pub fn new(name: &str, passed: bool, detail: String) -> Self {
        CheckLine { name: name.to_string(), passed, detail }
    }
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{mark} {}: {}", self.name, self.detail)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Invariants,
    Coupling,
    Oracle,
    Lemma64,
    Regimes,
}

impl Suite {
    pub const ALL: [Suite; 5] =
        [Suite::Invariants, Suite::Coupling, Suite::Oracle, Suite::Lemma64, Suite::Regimes];

    pub fn label(self) -> &'static str {
        match self {
            Suite::Invariants => "invariants",
            Suite::Coupling => "coupling",
            Suite::Oracle => "oracle",
            Suite::Lemma64 => "lemma64",
            Suite::Regimes => "regimes",
        }
    }

    pub fn from_label(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.label() == s)
    }
}

/// Errors inside a check become failed lines rather than aborting the suite.
pub fn run_suite(suite: Suite, workers: usize) -> Vec<CheckLine> {
    match suite {
        Suite::Invariants => {
            vec![
                degenerate_q0(64, 100, 1),
                degenerate_q1(64, 100, 2),
                determinism(128, 0.4, 3),
                opinion_walk(64, 0.5),
            ]
        }
        Suite::Coupling => vec![coupling(64, 0.5, 100, 5), jump_chain(6, 0.5, 50_000, 6)],
        Suite::Oracle => vec![oracle_agreement(200, &[0.05, 0.1, 0.2, 0.5, 1.0], 0.01)],
        Suite::Lemma64 => vec![
            lemma64_exact(512, 0.3, 1.1),
            lemma64_monte_carlo(128, 0.3, 1.1, 10_000, 7),
            // r close to 1 puts the tail mid-range, where agreement is informative
            lemma64_monte_carlo(128, 0.3, 1.01, 10_000, 8),
        ],
        Suite::Regimes => {
            let with = |mut c: RegimeCheck| {
                c.workers = workers;
                c
            };
            vec![
                regime(&with(RegimeCheck::thm32()), 0.85, true),
                regime(&with(RegimeCheck::thm34()), 0.95, false),
                regime(&with(RegimeCheck::prop45()), 0.5, false),
            ]
        }
    }
}

fn fail(name: &str, e: impl fmt::Display) -> CheckLine {
    CheckLine::new(name, false, format!("error: {e}"))
}

/// `q = 0` on the balanced complete graph: every run segregates along the
/// initial opinions.
pub fn degenerate_q0(n: usize, runs: u64, seed: u64) -> CheckLine {
    let name = "degenerate q=0";
    let params = ModelParams::balanced(n, 0.0);
    let initial = match params.opinion_counts() {
        Ok(c) => c,
        Err(e) => return fail(name, e),
    };
    let mut good = 0;
    for r in 0..runs {
        match run_to_absorption(&params, derive_seed(seed, 0, 0, r)) {
            Ok(o) if o.outcome_class == OutcomeClass::Segregation && o.final_opinion_counts == initial => {
                good += 1
            }
            Ok(_) => {}
            Err(e) => return fail(name, e),
        }
    }
    CheckLine::new(name, good == runs, format!("{good}/{runs} segregated with initial counts at N={n}"))
}

/// `q = 1` on a connected start: every run ends in connected consensus.
pub fn degenerate_q1(n: usize, runs: u64, seed: u64) -> CheckLine {
    let name = "degenerate q=1";
    let params = ModelParams::balanced(n, 1.0);
    let mut good = 0;
    for r in 0..runs {
        match run_to_absorption(&params, derive_seed(seed, 0, 0, r)) {
            Ok(o) if o.outcome_class == OutcomeClass::ConnectedConsensus => good += 1,
            Ok(_) => {}
            Err(e) => return fail(name, e),
        }
    }
    CheckLine::new(name, good == runs, format!("{good}/{runs} connected consensus at N={n}"))
}

pub fn determinism(n: usize, q: f64, seed: u64) -> CheckLine {
    let params = ModelParams::balanced(n, q);
    let same = (0..5).all(|r| {
        let s = derive_seed(seed, 0, 0, r);
        run_to_absorption(&params, s).ok() == run_to_absorption(&params, s).ok()
    });
    CheckLine::new("determinism", same, format!("5 seeds replayed at N={n}, q={q}"))
}

pub fn opinion_walk(n: usize, q: f64) -> CheckLine {
    match opinion_walk_check(&ModelParams::balanced(n, q), 50, 4) {
        Ok(w) => CheckLine::new(
            "opinion walk",
            w.passed,
            format!(
                "{} updates, up-frequency {:.4} (sigma {:.4}), runs-test p {:.3}, irregular {}",
                w.updates,
                w.up_frequency,
                w.sigma,
                w.runs_test_p.unwrap_or(f64::NAN),
                w.irregular_moves
            ),
        ),
        Err(e) => fail("opinion walk", e),
    }
}

/// The deletion graph stays inside the model graph at every step.
pub fn coupling(n: usize, q: f64, runs: u64, seed: u64) -> CheckLine {
    let name = "coupling";
    let params = ModelParams::balanced(n, q);
    let mut violations = 0;
    for r in 0..runs {
        match run_delayed(&params, derive_seed(seed, 0, 0, r), default_step_budget(n, q)) {
            Ok((_, rep)) => violations += u64::from(rep.first_violation.is_some()),
            Err(e) => return fail(name, e),
        }
    }
    CheckLine::new(
        name,
        violations == 0,
        format!("{violations} violating runs out of {runs} at N={n}, q={q}"),
    )
}

pub fn jump_chain(n: usize, q: f64, runs: u64, seed: u64) -> CheckLine {
    match jump_chain_equivalence(n, q, runs, seed) {
        Ok(r) => CheckLine::new(
            "jump-chain equivalence",
            r.total_variation <= 0.02 && r.p_value >= 1e-3,
            format!(
                "TV {:.4} (<= 0.02), chi2 {:.1} on {} dof, p {:.3} (>= 0.001), {} runs each at N={n}",
                r.total_variation, r.chi2, r.dof, r.p_value, runs
            ),
        ),
        Err(e) => fail("jump-chain equivalence", e),
    }
}

/// Exact exit-time survival of the centred walk against the limit `beta`.
pub fn oracle_agreement(n: usize, xs: &[f64], tol: f64) -> CheckLine {
    let name = "oracle vs beta";
    let nn = (n * n) as f64;
    let horizon = xs.iter().map(|&x| (x * nn).floor() as usize).max().unwrap_or(0);
    let curve = match srw_exit_survival(n, n / 2, horizon) {
        Ok(c) => c,
        Err(e) => return fail(name, e),
    };
    let worst =
        xs.iter().map(|&x| (curve.at((x * nn).floor() as usize) - beta_value(x)).abs()).fold(0.0, f64::max);
    CheckLine::new(name, worst <= tol, format!("max |DP - beta| = {worst:.5} over {xs:?} at N={n}"))
}

pub fn lemma64_exact(n: usize, q: f64, r: f64) -> CheckLine {
    match DeletionBoundParams::new(n, q, r) {
        Ok(p) => {
            let v = deletion_bound_probability(&p);
            CheckLine::new("deletion tail exact", v >= 0.999, format!("P = {v:.6} at N={n}, q={q}, r={r}"))
        }
        Err(e) => fail("deletion tail exact", e),
    }
}

/// Monte Carlo estimate within three standard errors of the exact tail. The
/// standard error is taken at the exact value, floored at one trial's worth
/// so that a degenerate tail does not demand bit-exact agreement.
pub fn lemma64_monte_carlo(n: usize, q: f64, r: f64, trials: u64, seed: u64) -> CheckLine {
    match DeletionBoundParams::new(n, q, r) {
        Ok(p) => {
            let exact = deletion_bound_probability(&p);
            let mc = deletion_bound_monte_carlo(&p, trials, seed);
            let se = (exact * (1.0 - exact) / trials as f64).sqrt().max(1.0 / trials as f64);
            let z = (mc.estimate - exact).abs() / se;
            CheckLine::new(
                "deletion tail monte carlo",
                z <= 3.0,
                format!("MC {:.5} vs exact {exact:.5}, {z:.2} SE, {trials} trials at N={n}", mc.estimate),
            )
        }
        Err(e) => fail("deletion tail monte carlo", e),
    }
}

/// Success probability at the largest N must reach `threshold`; with
/// `need_monotone` the estimates must also not decrease along the ladder.
pub fn regime(check: &RegimeCheck, threshold: f64, need_monotone: bool) -> CheckLine {
    let name = check.kind.label();
    match regime_checks(check) {
        Ok(rep) => {
            let last = rep.last().probability.p_hat;
            let ladder: Vec<String> = rep
                .rows
                .iter()
                .map(|row| {
                    let p = &row.probability;
                    format!("N={}: {:.3} [{:.3}, {:.3}]", row.n, p.p_hat, p.ci_lo, p.ci_hi)
                })
                .collect();
            CheckLine::new(
                name,
                last >= threshold && (!need_monotone || rep.monotone_nondecreasing),
                format!(
                    "{} (need >= {threshold}), monotone {}",
                    ladder.join(", "),
                    rep.monotone_nondecreasing
                ),
            )
        }
        Err(e) => fail(name, e),
    }
}
