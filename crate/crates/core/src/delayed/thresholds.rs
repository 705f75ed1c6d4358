use serde::Serialize;

use super::DelayedError;

/// Step horizons up to which the deletion graph started from the complete
/// graph stays connected (`n1`) and keeps minimum degree at least `kappa N`
/// (`n2`) with high probability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConnectivityThresholds {
    pub n: usize,
    pub q: f64,
    pub kappa: f64,
    pub eps: f64,
    pub n1: f64,
    pub n2: f64,
}

impl ConnectivityThresholds {
    pub fn new(n: usize, kappa: f64, eps: f64, q: f64) -> Result<Self, DelayedError> {
        Ok(ConnectivityThresholds {
            n,
            q,
            kappa,
            eps,
            n1: n1_threshold(n, eps, q)?,
            n2: n2_threshold(n, kappa, eps, q)?,
        })
    }
}

fn pairs(n: usize) -> f64 {
    (n as f64) * (n as f64 - 1.0) / 2.0
}

fn check_q(q: f64) -> Result<(), DelayedError> {
    if q >= 1.0 {
        return Err(DelayedError::DivergentThreshold);
    }
    if !(q >= 0.0) {
        return Err(DelayedError::BadParams(format!("q = {q} outside [0, 1)")));
    }
    Ok(())
}

/// `C(N,2) * (log N - log((1 + eps) log N)) / (2 (1 - q))`.
pub fn n1_threshold(n: usize, eps: f64, q: f64) -> Result<f64, DelayedError> {
    check_q(q)?;
    if !(eps > 0.0) {
        return Err(DelayedError::BadParams(format!("eps = {eps} must be positive")));
    }
    let log_n = (n as f64).ln();
    if n < 3 || log_n <= ((1.0 + eps) * log_n).ln() {
        return Err(DelayedError::BadParams(format!("N = {n} too small for eps = {eps}")));
    }
    Ok(pairs(n) * (log_n - ((1.0 + eps) * log_n).ln()) / (2.0 * (1.0 - q)))
}

/// `C(N,2) * log(1 / (kappa + eps)) / (2 (1 - q))`.
pub fn n2_threshold(n: usize, kappa: f64, eps: f64, q: f64) -> Result<f64, DelayedError> {
    check_q(q)?;
    if !(kappa > 0.0 && eps > 0.0 && kappa + eps < 1.0) {
        return Err(DelayedError::BadParams(format!(
            "need kappa, eps > 0 and kappa + eps < 1, got kappa = {kappa}, eps = {eps}"
        )));
    }
    Ok(pairs(n) * (1.0 / (kappa + eps)).ln() / (2.0 * (1.0 - q)))
}
