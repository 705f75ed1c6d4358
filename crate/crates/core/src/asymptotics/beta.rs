use std::f64::consts::PI;

use serde::Serialize;
use statrs::function::erf::erfc;

use super::AsymptoticsError;

pub const DEFAULT_TOL: f64 = 1e-12;

/// Below this argument the eigenfunction series needs thousands of terms, so
/// the method-of-images expansion of the same function is summed instead.
const IMAGE_SERIES_BELOW: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BetaEval {
    pub x: f64,
    pub tol: f64,
    pub value: f64,
    pub terms_used: usize,
}

/// Limiting tail `lim P(tau_N > x N^2)` of the exit time of a simple
/// symmetric walk started in the middle of `{0, ..., N}`:
///
/// `(4/pi) * sum_j (-1)^j / (2j+1) * exp(-(pi^2/2) (2j+1)^2 x)`.
///
/// Summation stops once the next term is below `tol` in magnitude. Note the
/// odd squares `(2j+1)^2` in the exponent; the exact walk survival computed by
/// [`srw_exit_survival`](super::srw_exit_survival) matches only this form.
pub fn beta(x: f64, tol: f64) -> Result<BetaEval, AsymptoticsError> {
    if !(tol > 0.0) {
        return Err(AsymptoticsError::BadTolerance(tol));
    }
    if !(x >= 0.0) {
        return Err(AsymptoticsError::BadArgument(x));
    }
    if x == 0.0 {
        return Ok(BetaEval { x, tol, value: 1.0, terms_used: 0 });
    }
    if x.is_infinite() {
        return Ok(BetaEval { x, tol, value: 0.0, terms_used: 0 });
    }
    let (value, terms_used) =
        if x < IMAGE_SERIES_BELOW { image_series(x, tol) } else { eigen_series(x, tol) };
    Ok(BetaEval { x, tol, value: value.clamp(0.0, 1.0), terms_used })
}

/// [`beta`] with the default tolerance.
pub fn beta_value(x: f64) -> f64 {
    beta(x, DEFAULT_TOL).map(|b| b.value).unwrap_or(f64::NAN)
}

fn eigen_term(j: usize, x: f64) -> f64 {
    let m = (2 * j + 1) as f64;
    (4.0 / PI) / m * (-(PI * PI / 2.0) * m * m * x).exp()
}

fn eigen_series(x: f64, tol: f64) -> (f64, usize) {
    let mut sum = 0.0;
    let mut j = 0;
    loop {
        let t = eigen_term(j, x);
        sum += if j % 2 == 0 { t } else { -t };
        j += 1;
        if eigen_term(j, x) < tol {
            return (sum, j);
        }
    }
}

// P(Brownian motion from 0 stays in (-1/2, 1/2) up to time x)
//   = sum_k (-1)^k [Phi((2k+1)/(2 sqrt x)) - Phi((2k-1)/(2 sqrt x))]
fn image_series(x: f64, tol: f64) -> (f64, usize) {
    let s = 1.0 / (2.0 * x.sqrt());
    let upper = |u: f64| 0.5 * erfc(u / std::f64::consts::SQRT_2);
    // k = 0 term: Phi(s) - Phi(-s)
    let mut sum = 1.0 - 2.0 * upper(s);
    let mut k = 1;
    loop {
        // k and -k contribute the same amount by symmetry
        let lo = (2 * k - 1) as f64 * s;
        let hi = (2 * k + 1) as f64 * s;
        let t = 2.0 * (upper(lo) - upper(hi));
        sum += if k % 2 == 0 { t } else { -t };
        k += 1;
        if t < tol {
            return (sum, k);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_and_leibniz_limit() {
        assert_eq!(beta(0.0, 1e-12).unwrap().value, 1.0);
        assert!((beta(1e-9, 1e-14).unwrap().value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn errors() {
        assert_eq!(beta(0.1, 0.0), Err(AsymptoticsError::BadTolerance(0.0)));
        assert!(beta(-1.0, 1e-12).is_err());
        assert!(beta(f64::NAN, 1e-12).is_err());
    }

    #[test]
    fn known_values() {
        // high-precision reference sums of the odd-square series
        let cases = [
            (0.01, 0.999_998_853_393_712_5),
            (0.05, 0.949_305_362_684_470_4),
            (0.3 / 1.4, 0.442_212_936_442_853_4),
            (1.0, 0.009_156_990_289_760_756),
        ];
        for (x, want) in cases {
            let got = beta(x, 1e-15).unwrap().value;
            assert!((got - want).abs() < 1e-12, "beta({x}) = {got}");
        }
    }

    #[test]
    fn large_argument_is_tiny() {
        let b = beta(10.0, 1e-30).unwrap();
        assert!(b.value < 1e-20);
        assert!(b.value > 0.0);
        let lead = 4.0 / PI * (-5.0 * PI * PI).exp();
        assert!((b.value - lead).abs() / lead < 1e-12);
    }

    #[test]
    fn both_expansions_agree_on_overlap() {
        for x in [1e-3, 5e-3, 0.02, 0.08, 0.3] {
            let (a, _) = eigen_series(x, 1e-16);
            let (b, _) = image_series(x, 1e-16);
            // statrs' erfc is good to about 1e-11 absolute
            assert!((a - b).abs() < 1e-10, "x = {x}: {a} vs {b}");
        }
    }

    #[test]
    fn monotone_and_continuous_on_grid() {
        let mut prev = beta_value(0.0);
        for i in 1..=500 {
            let v = beta_value(i as f64 * 0.01);
            assert!(v <= prev + 1e-15, "not decreasing at {}", i as f64 * 0.01);
            // the steepest slope of beta is about 3.7, near x = 0.1
            assert!(prev - v < 0.04);
            prev = v;
        }
    }
}
