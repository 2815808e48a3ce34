//! Empirical distribution of a sample set.

use alloc::vec::Vec;

// Shadowed by inherent f64 methods whenever std is linked into the build.
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// Step CDF over a sorted copy of the samples.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalCdf {
    sorted: Vec<f64>,
}

impl EmpiricalCdf {
    pub fn new(mut samples: Vec<f64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::Empty("empirical_cdf"));
        }
        if let Some(&bad) = samples.iter().find(|v| v.is_nan()) {
            return Err(Error::domain("sample", bad, "not NaN"));
        }
        samples.sort_by(f64::total_cmp);
        Ok(EmpiricalCdf { sorted: samples })
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    pub fn sorted(&self) -> &[f64] {
        &self.sorted
    }

    /// Fraction of samples `<= x`.
    pub fn cdf(&self, x: f64) -> f64 {
        self.sorted.partition_point(|&v| v <= x) as f64 / self.len() as f64
    }

    /// Fraction of samples strictly greater than `x`.
    pub fn exceedance(&self, x: f64) -> f64 {
        1.0 - self.cdf(x)
    }

    /// Nearest-rank percentile, `p` in `[0, 100]`.
    pub fn percentile(&self, p: f64) -> Result<f64> {
        if !(0.0..=100.0).contains(&p) {
            return Err(Error::domain("percentile", p, "0 <= p <= 100"));
        }
        let rank = (p / 100.0 * self.len() as f64).ceil() as usize;
        Ok(self.sorted[rank.max(1) - 1])
    }

    /// `(value, cumulative probability)` for every order statistic.
    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        let n = self.len() as f64;
        self.sorted
            .iter()
            .enumerate()
            .map(move |(i, &v)| (v, (i + 1) as f64 / n))
    }

    pub fn min(&self) -> f64 {
        self.sorted[0]
    }

    pub fn max(&self) -> f64 {
        self.sorted[self.len() - 1]
    }
}

/// Mean and standard error of the mean.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MeanEstimate {
    pub count: u64,
    pub mean: f64,
    m2: f64,
}

impl MeanEstimate {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            self.m2 / (self.count - 1) as f64
        }
    }

    pub fn std_err(&self) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            (self.variance() / self.count as f64).sqrt()
        }
    }
}

impl FromIterator<f64> for MeanEstimate {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut m = MeanEstimate::default();
        iter.into_iter().for_each(|x| m.push(x));
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn cdf_midpoint() {
        let cdf = EmpiricalCdf::new(vec![3.0, 1.0, 4.0, 2.0]).unwrap();
        assert_eq!(cdf.cdf(2.5), 0.5);
        assert_eq!(cdf.cdf(0.0), 0.0);
        assert_eq!(cdf.cdf(4.0), 1.0);
        assert_eq!(cdf.exceedance(3.0), 0.25);
    }

    #[test]
    fn nearest_rank_percentile() {
        let cdf = EmpiricalCdf::new((1..=100).map(f64::from).collect()).unwrap();
        assert_eq!(cdf.percentile(5.0).unwrap(), 5.0);
        assert_eq!(cdf.percentile(0.0).unwrap(), 1.0);
        assert_eq!(cdf.percentile(100.0).unwrap(), 100.0);
        assert!(cdf.percentile(101.0).is_err());
    }

    #[test]
    fn single_sample() {
        let cdf = EmpiricalCdf::new(vec![0.7]).unwrap();
        let pts: Vec<_> = cdf.points().collect();
        assert_eq!(pts, vec![(0.7, 1.0)]);
        assert_eq!(cdf.cdf(0.69), 0.0);
        assert_eq!(cdf.percentile(50.0).unwrap(), 0.7);
    }

    #[test]
    fn rejects_empty_and_nan() {
        assert!(EmpiricalCdf::new(vec![]).is_err());
        assert!(EmpiricalCdf::new(vec![1.0, f64::NAN]).is_err());
    }

    #[test]
    fn mean_estimate() {
        let m: MeanEstimate = [1.0, 2.0, 3.0, 4.0].into_iter().collect();
        assert!((m.mean - 2.5).abs() < 1e-15);
        assert!((m.variance() - 5.0 / 3.0).abs() < 1e-15);
    }
}
