use super::{beta_value, AsymptoticsError};

/// Asymptotic lower bound on `P(Z_min > c' N)` when the initial minority
/// fraction is `c`: `beta(q / (2(1-q)) / (4 (c - c')^2))`. With `c = 1/2` and
/// `c' = 0` this bounds the segregation probability.
pub fn theorem31_bound(q: f64, c: f64, c_prime: f64) -> Result<f64, AsymptoticsError> {
    if !(q > 0.0 && q < 1.0) {
        return Err(AsymptoticsError::BadParams(format!("q = {q} outside (0, 1)")));
    }
    if !(c_prime >= 0.0 && c_prime < c && c <= 0.5) {
        return Err(AsymptoticsError::BadParams(format!(
            "need 0 <= c' < c <= 1/2, got c = {c}, c' = {c_prime}"
        )));
    }
    let gap = c - c_prime;
    Ok(beta_value(q / (2.0 * (1.0 - q)) / (4.0 * gap * gap)))
}

/// Asymptotic lower bound on the probability of eps-consensus:
/// `1 - beta(q / (1-q) * eps (1 - eps))`.
pub fn prop33_bound(q: f64, eps: f64) -> Result<f64, AsymptoticsError> {
    if !(q > 0.0 && q < 1.0) {
        return Err(AsymptoticsError::BadParams(format!("q = {q} outside (0, 1)")));
    }
    if !(eps > 0.0 && eps < 0.5) {
        return Err(AsymptoticsError::BadParams(format!("eps = {eps} outside (0, 1/2)")));
    }
    Ok(1.0 - beta_value(q / (1.0 - q) * eps * (1.0 - eps)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segregation_bound_at_q_03() {
        let v = theorem31_bound(0.3, 0.5, 0.0).unwrap();
        assert!((v - 0.442_212_936_442_853_4).abs() < 1e-12);
        assert_eq!(v, beta_value(0.3 / 1.4));
    }

    #[test]
    fn limits_in_q() {
        assert!(theorem31_bound(1e-9, 0.5, 0.0).unwrap() > 1.0 - 1e-6);
        assert!(theorem31_bound(1.0 - 1e-9, 0.5, 0.0).unwrap() < 1e-12);
    }

    #[test]
    fn consensus_bound() {
        // 1 - beta(0.1875), reference value from the odd-square series
        let v = prop33_bound(0.5, 0.25).unwrap();
        assert!((v - 0.495_362_162_497_640_5).abs() < 1e-12, "{v}");
    }

    #[test]
    fn preconditions() {
        assert!(theorem31_bound(0.0, 0.5, 0.0).is_err());
        assert!(theorem31_bound(0.3, 0.25, 0.25).is_err());
        assert!(theorem31_bound(0.3, 0.6, 0.0).is_err());
        assert!(prop33_bound(0.3, 0.5).is_err());
        assert!(prop33_bound(1.0, 0.2).is_err());
    }
}
