//! Small statistics helpers shared by the checks and the experiment harness.

use statrs::distribution::{ChiSquared, ContinuousCDF, Normal};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum StatsError {
    #[error("bad counts: {successes} successes out of {trials} trials")]
    BadCounts { successes: u64, trials: u64 },
    #[error("z must be positive, got {0}")]
    BadZ(f64),
}

/// Two-sided 95% normal quantile used for every reported interval.
pub const Z95: f64 = 1.959_963_984_540_054;

/// Wilson score interval, clamped to `[0, 1]`.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> Result<(f64, f64), StatsError> {
    if trials == 0 || successes > trials {
        return Err(StatsError::BadCounts { successes, trials });
    }
    if !(z > 0.0) {
        return Err(StatsError::BadZ(z));
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let lo = if successes == 0 { 0.0 } else { (centre - half).max(0.0) };
    let hi = if successes == trials { 1.0 } else { (centre + half).min(1.0) };
    Ok((lo, hi))
}

pub fn normal_sf(z: f64) -> f64 {
    Normal::standard().sf(z)
}

pub fn two_sided_p(z: f64) -> f64 {
    (2.0 * normal_sf(z.abs())).min(1.0)
}

/// Upper tail of the chi-square distribution.
pub fn chi2_sf(statistic: f64, dof: usize) -> f64 {
    if dof == 0 {
        return 1.0;
    }
    ChiSquared::new(dof as f64).map(|d| d.sf(statistic)).unwrap_or(f64::NAN)
}

/// Wald-Wolfowitz runs test on a two-valued sequence. Returns the z-score
/// and two-sided p-value; `None` when one of the symbols never appears.
pub fn runs_test(seq: &[bool]) -> Option<(f64, f64)> {
    let n1 = seq.iter().filter(|&&b| b).count() as f64;
    let n2 = seq.len() as f64 - n1;
    if n1 == 0.0 || n2 == 0.0 {
        return None;
    }
    let n = n1 + n2;
    let runs = 1 + seq.windows(2).filter(|w| w[0] != w[1]).count();
    let mean = 2.0 * n1 * n2 / n + 1.0;
    let var = 2.0 * n1 * n2 * (2.0 * n1 * n2 - n) / (n * n * (n - 1.0));
    if var <= 0.0 {
        return None;
    }
    let z = (runs as f64 - mean) / var.sqrt();
    Some((z, two_sided_p(z)))
}

/// Pearson chi-square homogeneity test of two count vectors over the same
/// categories. Categories empty on both sides are skipped. Returns the
/// statistic, degrees of freedom and p-value.
pub fn chi2_two_sample(a: &[u64], b: &[u64]) -> (f64, usize, f64) {
    assert_eq!(a.len(), b.len());
    let na: u64 = a.iter().sum();
    let nb: u64 = b.iter().sum();
    let total = (na + nb) as f64;
    let mut stat = 0.0;
    let mut cells = 0usize;
    for (&x, &y) in a.iter().zip(b) {
        let col = (x + y) as f64;
        if col == 0.0 {
            continue;
        }
        cells += 1;
        let ea = col * na as f64 / total;
        let eb = col * nb as f64 / total;
        stat += (x as f64 - ea).powi(2) / ea + (y as f64 - eb).powi(2) / eb;
    }
    let dof = cells.saturating_sub(1);
    (stat, dof, chi2_sf(stat, dof))
}

/// Total-variation distance between two empirical distributions.
pub fn total_variation(a: &[u64], b: &[u64]) -> f64 {
    let na: u64 = a.iter().sum();
    let nb: u64 = b.iter().sum();
    if na == 0 || nb == 0 {
        return if na == nb { 0.0 } else { 1.0 };
    }
    0.5 * a.iter().zip(b).map(|(&x, &y)| (x as f64 / na as f64 - y as f64 / nb as f64).abs()).sum::<f64>()
}

pub fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Midpoint median; NaN for an empty slice.
pub fn median(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        0.5 * (v[m - 1] + v[m])
    }
}
