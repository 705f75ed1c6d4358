//! Numerical kernels for the large-population bounds: the limiting exit-time
//! tail of a centred random walk, exact finite-size survival curves, the
//! negative-binomial update/deletion race, and the bound formulas built from
//! them. All functions are pure.

mod beta;
mod bounds;
mod negbin;
mod survival;

use thiserror::Error;

pub use beta::{beta, beta_value, BetaEval, DEFAULT_TOL};
pub use bounds::{prop33_bound, theorem31_bound};
pub use negbin::{
    deletion_bound_monte_carlo, deletion_bound_probability, negative_binomial_tail,
    regularized_incomplete_beta, DeletionBoundParams, MonteCarloTail, EXACT_MAX_SUCCESSES,
};
pub use survival::{offcenter_survival, srw_exit_survival, OffCenterComparison, SurvivalCurve};

#[derive(Debug, Error, PartialEq)]
pub enum AsymptoticsError {
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("argument must be a non-negative number, got {0}")]
    BadArgument(f64),
    #[error("walk needs N >= 2 and 0 < start < N, got N = {n}, start = {start}")]
    BadWalk { n: usize, start: usize },
    #[error("r must exceed 1, got {0}")]
    BadR(f64),
    #[error("invalid parameters: {0}")]
    BadParams(String),
}
