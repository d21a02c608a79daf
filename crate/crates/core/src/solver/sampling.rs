use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{solve_exact, SolveMode, SolveReport};
use crate::error::{Error, Result};
use crate::geom::{Frame, PointSet};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleParams {
    pub epsilon: f64,
    pub c: f64,
    pub seed: u64,
    /// Sample size.
    pub s: usize,
    /// Outlier budget on the sample.
    pub t_prime: usize,
}

impl SampleParams {
    /// `s = min(n, ⌈c · ln n / ε²⌉)` (at least 3) and
    /// `t' = ⌊(t/n + ε − ε·t/n) · s⌋`.
    pub fn new(epsilon: f64, c: f64, seed: u64, n: usize, t: usize) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::InvalidSampleParams(format!("epsilon must lie in (0, 1), got {epsilon}")));
        }
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::InvalidSampleParams(format!("c must be positive, got {c}")));
        }
        if n < 3 {
            return Err(Error::InvalidSampleParams(format!("need at least 3 points, got {n}")));
        }
        let raw = (c * (n as f64).ln() / (epsilon * epsilon)).ceil();
        let s = if raw >= n as f64 { n } else { (raw as usize).max(3).min(n) };
        let frac = t as f64 / n as f64;
        let t_prime = ((frac + epsilon - epsilon * frac) * s as f64).floor() as usize;
        if 2 * t_prime >= s {
            return Err(Error::InvalidSampleParams(format!(
                "sample budget t' = {t_prime} is not below half the sample size {s}"
            )));
        }
        if s - t_prime < 3 {
            return Err(Error::InvalidSampleParams(format!("sample size {s} leaves fewer than 3 inliers for t' = {t_prime}")));
        }
        Ok(SampleParams { epsilon, c, seed, s, t_prime })
    }
}

/// Sorted indices of a uniform sample without replacement.
pub(crate) fn draw_sample(n: usize, s: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut idx = rand::seq::index::sample(&mut rng, n, s).into_vec();
    idx.sort_unstable();
    idx
}

/// Solves exactly on a random sample with budget `t'` and recounts the
/// resulting rectangle on the full set.
pub fn solve_sampled(ps: &PointSet, t: usize, p: &SampleParams, collinear_robust: bool) -> Result<SolveReport> {
    let n = ps.len();
    super::check_solve_preconditions(n, t)?;
    let expected = SampleParams::new(p.epsilon, p.c, p.seed, n, t)?;
    if (expected.s, expected.t_prime) != (p.s, p.t_prime) {
        return Err(Error::InvalidSampleParams(format!(
            "parameters were derived for another instance (s = {}, t' = {}; expected {}, {})",
            p.s, p.t_prime, expected.s, expected.t_prime
        )));
    }
    let idx = draw_sample(n, p.s, p.seed);
    let sample = ps.subset(&idx);
    let sub = solve_exact(&sample, p.t_prime, collinear_robust)?;

    let mut rect = sub.rectangle.clone();
    rect.supports = rect.supports.map(|i| idx[i]);
    let f = rect.frame;
    rect.frame = Frame { i1: idx[f.i1], i2: idx[f.i2], ..f };
    let mut report = SolveReport::assemble(ps, rect, t, SolveMode::Sampled, sub.stats);
    report.sample_params = Some(*p);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_sizes() {
        let p = SampleParams::new(0.2, 1.0, 0, 2000, 10).unwrap();
        assert_eq!((p.s, p.t_prime), (191, 38));
        // a large constant takes the whole set
        let p = SampleParams::new(0.2, 1000.0, 0, 50, 5).unwrap();
        assert_eq!(p.s, 50);
        assert_eq!(p.t_prime, 14);
    }

    #[test]
    fn bad_params() {
        assert!(SampleParams::new(0.0, 1.0, 0, 100, 1).is_err());
        assert!(SampleParams::new(1.0, 1.0, 0, 100, 1).is_err());
        assert!(SampleParams::new(0.2, -1.0, 0, 100, 1).is_err());
        // budget too large for the sample
        assert!(matches!(SampleParams::new(0.9, 1.0, 0, 100, 40), Err(Error::InvalidSampleParams(_))));
    }

    #[test]
    fn sample_is_sorted_distinct_and_seeded() {
        let a = draw_sample(1000, 50, 42);
        assert_eq!(a, draw_sample(1000, 50, 42));
        assert_ne!(a, draw_sample(1000, 50, 43));
        assert!(a.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(draw_sample(7, 7, 1), (0..7).collect::<Vec<_>>());
    }

    #[test]
    fn whole_set_sample_is_no_worse_than_exact() {
        let c: Vec<(f64, f64)> =
            (0..24).map(|i| (((i * 37) % 101) as f64, ((i * i * 13 + 7) % 97) as f64)).collect();
        let ps = PointSet::from_xy(&c).unwrap();
        let p = SampleParams::new(0.1, 100.0, 5, ps.len(), 2).unwrap();
        assert_eq!(p.s, 24);
        let r = solve_sampled(&ps, 2, &p, true).unwrap();
        let exact = solve_exact(&ps, 2, true).unwrap();
        assert_ne!(r.area().compare(exact.area()), std::cmp::Ordering::Greater);
        assert!(r.enclosed_indices.len() >= ps.len() - p.t_prime);
        assert_eq!(r.mode, SolveMode::Sampled);
        assert_eq!(r.sample_params, Some(p));
    }
}
