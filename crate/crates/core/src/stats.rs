//! Empirical-CDF utilities: KS statistics, empirical quantiles, and the
//! CDF/quantile abstraction shared by closed-form noise laws and
//! sample-based distributions.

use crate::error::{Error, Result};

/// A one-dimensional distribution exposing its CDF and (generalized) quantile.
pub trait Cdf {
    fn cdf(&self, x: f64) -> f64;
    fn quantile(&self, u: f64) -> f64;
}

/// Empirical distribution of a finite sample.
#[derive(Debug, Clone)]
pub struct EmpiricalCdf {
    sorted: Vec<f64>,
}

impl EmpiricalCdf {
    pub fn new(mut samples: Vec<f64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::domain("empirical CDF needs at least one sample"));
        }
        if samples.iter().any(|x| !x.is_finite()) {
            return Err(Error::numeric("non-finite sample in empirical CDF"));
        }
        samples.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
        Ok(Self { sorted: samples })
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    pub fn samples(&self) -> &[f64] {
        &self.sorted
    }
}

impl Cdf for EmpiricalCdf {
    /// Fraction of samples <= x.
    fn cdf(&self, x: f64) -> f64 {
        let n = self.sorted.len();
        let k = self.sorted.partition_point(|&s| s <= x);
        k as f64 / n as f64
    }

    /// Generalized inverse: the smallest sample s with cdf(s) >= u.
    fn quantile(&self, u: f64) -> f64 {
        let n = self.sorted.len();
        if u <= 0.0 {
            return self.sorted[0];
        }
        let k = ((u * n as f64).ceil() as usize).clamp(1, n);
        self.sorted[k - 1]
    }
}

/// One-sample Kolmogorov–Smirnov statistic against a reference CDF.
pub fn ks_statistic<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> f64 {
    let mut xs = samples.to_vec();
    xs.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
    let n = xs.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in xs.iter().enumerate() {
        let f = cdf(x);
        d = d.max((f - i as f64 / n).abs());
        d = d.max(((i as f64 + 1.0) / n - f).abs());
    }
    d
}

/// Two-sample Kolmogorov–Smirnov statistic.
pub fn ks_two_sample(xs: &[f64], ys: &[f64]) -> f64 {
    let mut xs = xs.to_vec();
    let mut ys = ys.to_vec();
    xs.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
    ys.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
    let (n, m) = (xs.len() as f64, ys.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d = 0.0f64;
    while i < xs.len() && j < ys.len() {
        // advance past ties on both sides before comparing heights
        let v = xs[i].min(ys[j]);
        while i < xs.len() && xs[i] == v {
            i += 1;
        }
        while j < ys.len() && ys[j] == v {
            j += 1;
        }
        d = d.max((i as f64 / n - j as f64 / m).abs());
    }
    d
}

/// Median of a sample (averages the two central order statistics).
pub fn median(samples: &[f64]) -> f64 {
    let mut xs = samples.to_vec();
    xs.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        0.5 * (xs[n / 2 - 1] + xs[n / 2])
    }
}

/// (first quartile, third quartile) via the empirical quantile.
pub fn quartiles(samples: &[f64]) -> (f64, f64) {
    let ecdf = EmpiricalCdf::new(samples.to_vec()).expect("non-empty sample");
    (ecdf.quantile(0.25), ecdf.quantile(0.75))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ks_of_exact_quantiles_is_small() {
        let n = 1000;
        let samples: Vec<f64> = (0..n)
            .map(|k| crate::special::normal_quantile((k as f64 + 0.5) / n as f64))
            .collect();
        let d = ks_statistic(&samples, crate::special::normal_cdf);
        assert!(d <= 0.5 / n as f64 + 1e-9, "d={d}");
    }

    #[test]
    fn two_sample_ks_identical_is_zero() {
        let xs = vec![0.3, -1.0, 2.0, 0.0];
        assert_eq!(ks_two_sample(&xs, &xs), 0.0);
    }

    #[test]
    fn empirical_quantile_roundtrip() {
        let ecdf = EmpiricalCdf::new(vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(ecdf.quantile(0.25), 1.0);
        assert_eq!(ecdf.quantile(0.5), 2.0);
        assert_eq!(ecdf.quantile(1.0), 4.0);
        assert_eq!(ecdf.cdf(2.0), 0.5);
        assert_eq!(ecdf.cdf(0.5), 0.0);
    }

    #[test]
    fn median_and_quartiles() {
        let xs = vec![1.0, 2.0, 3.0, 4.0, 5.0];
        assert_eq!(median(&xs), 3.0);
        let (q1, q3) = quartiles(&xs);
        assert_eq!(q1, 2.0);
        assert_eq!(q3, 4.0);
    }
}
