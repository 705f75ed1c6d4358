use serde::Serialize;

use super::AsymptoticsError;

/// Exact survival curve of a simple symmetric walk on `{0, ..., n}` absorbed
/// at both ends.
#[derive(Debug, Clone, Serialize)]
pub struct SurvivalCurve {
    pub n: usize,
    pub start: usize,
    /// Entry `t` is `P(tau > t)`.
    pub probabilities: Vec<f64>,
    /// Largest deviation of `survival + absorbed` from 1 over the horizon.
    pub max_mass_error: f64,
}

impl SurvivalCurve {
    /// `P(tau > t)`; zero past the horizon is not assumed, so `t` must be
    /// within it.
    pub fn at(&self, t: usize) -> f64 {
        self.probabilities[t]
    }

    pub fn horizon(&self) -> usize {
        self.probabilities.len() - 1
    }
}

/// Iterates the absorbed transition kernel exactly. Only sites with the
/// parity reachable at each step are touched.
pub fn srw_exit_survival(n: usize, start: usize, horizon: usize) -> Result<SurvivalCurve, AsymptoticsError> {
    if n < 2 || start == 0 || start >= n {
        return Err(AsymptoticsError::BadWalk { n, start });
    }
    let mut mass = vec![0.0f64; n + 1];
    let mut next = vec![0.0f64; n + 1];
    mass[start] = 1.0;
    let mut absorbed = 0.0f64;
    let mut probabilities = Vec::with_capacity(horizon + 1);
    probabilities.push(1.0);
    let mut max_mass_error = 0.0f64;
    for t in 0..horizon {
        // after step t+1 the walk sits on sites with parity start + t + 1
        let parity = (start + t + 1) % 2;
        let first = if parity == 1 { 1 } else { 2 };
        absorbed += 0.5 * (mass[1] + mass[n - 1]);
        let mut alive = 0.0;
        let mut z = first;
        while z < n {
            let v = 0.5 * (mass[z - 1] + mass[z + 1]);
            next[z] = v;
            alive += v;
            z += 2;
        }
        // clear the sites of the previous parity
        let mut z = 3 - first;
        while z < n {
            next[z] = 0.0;
            z += 2;
        }
        std::mem::swap(&mut mass, &mut next);
        max_mass_error = max_mass_error.max((alive + absorbed - 1.0).abs());
        probabilities.push(alive);
    }
    Ok(SurvivalCurve { n, start, probabilities, max_mass_error })
}

#[derive(Debug, Clone, Serialize)]
pub struct OffCenterComparison {
    pub n: usize,
    pub start: usize,
    pub step: usize,
    pub offcenter: f64,
    pub centered: f64,
    /// `offcenter <= centered + 1e-12`.
    pub dominated: bool,
}

/// Survival at step `floor(x n^2)` for a walk started at `start` versus one
/// started at `floor(n/2)`.
pub fn offcenter_survival(n: usize, start: usize, x: f64) -> Result<OffCenterComparison, AsymptoticsError> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(AsymptoticsError::BadArgument(x));
    }
    let step = (x * (n * n) as f64).floor() as usize;
    let off = srw_exit_survival(n, start, step)?;
    let centred = srw_exit_survival(n, n / 2, step)?;
    let (offcenter, centered) = (off.at(step), centred.at(step));
    Ok(OffCenterComparison { n, start, step, offcenter, centered, dominated: offcenter <= centered + 1e-12 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotics::beta_value;

    #[test]
    fn pair_absorbs_in_one_step() {
        let c = srw_exit_survival(2, 1, 4).unwrap();
        assert_eq!(c.probabilities, vec![1.0, 0.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn two_step_enumeration() {
        let c = srw_exit_survival(4, 2, 3).unwrap();
        assert_eq!(c.at(1), 1.0);
        assert_eq!(c.at(2), 0.5);
        assert_eq!(c.at(3), 0.5);
    }

    #[test]
    fn rejects_boundary_starts() {
        assert!(srw_exit_survival(10, 0, 3).is_err());
        assert!(srw_exit_survival(10, 10, 3).is_err());
        assert!(srw_exit_survival(1, 1, 3).is_err());
    }

    #[test]
    fn mass_is_conserved_and_curve_decreases() {
        for (n, start) in [(7, 3), (100, 50), (33, 1)] {
            let c = srw_exit_survival(n, start, 5000).unwrap();
            assert!(c.max_mass_error < 1e-12);
            assert!(c.probabilities.windows(2).all(|w| w[1] <= w[0] + 1e-15));
        }
    }

    #[test]
    fn dp_tracks_series_at_n100() {
        let n = 100;
        let c = srw_exit_survival(n, 50, n * n / 2).unwrap();
        for x in [0.1, 0.2, 0.5] {
            let t = (x * (n * n) as f64).floor() as usize;
            assert!((c.at(t) - beta_value(x)).abs() <= 0.02, "x = {x}");
        }
    }

    #[test]
    fn horizon_of_twenty_n_squared_kills_survival() {
        let n = 100;
        let c = srw_exit_survival(n, 50, 20 * n * n).unwrap();
        assert!(c.at(20 * n * n) <= 1e-3);
    }

    #[test]
    fn offcenter_is_dominated() {
        let same = offcenter_survival(100, 50, 0.2).unwrap();
        assert_eq!(same.offcenter, same.centered);
        let quarter = offcenter_survival(100, 25, 0.2).unwrap();
        assert!(quarter.dominated && quarter.offcenter < quarter.centered);
        let edge = offcenter_survival(100, 1, 0.2).unwrap();
        assert!(edge.dominated);
        assert!(edge.offcenter <= 0.5);
    }
}
