//! Samplers for n-dimensional log-concave noise with density proportional to
//! e^{-c ||x||_p^alpha}: the radial-uniform decomposition for general (p, alpha)
//! and the independent-coordinate shortcut for p = alpha.
//!
//! Row i of every sampler is drawn from substream i of the seed, so output is
//! independent of any chunking a parallel caller might apply.

use rand::Rng as _;
use rand_distr::{Distribution, Gamma};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{substream_rng, Rng};
use crate::stats::{median, quartiles};

/// Density proportional to e^{-c ||x||_p^alpha} on R^n.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormPowerDensity {
    pub n: usize,
    pub p: f64,
    pub alpha: f64,
    pub c: f64,
}

impl NormPowerDensity {
    pub fn new(n: usize, p: f64, alpha: f64, c: f64) -> Result<Self> {
        if n < 1 {
            return Err(Error::domain("dimension must be at least 1"));
        }
        if !(p >= 1.0) || !(alpha >= 1.0) || !(c > 0.0) {
            return Err(Error::domain("need p >= 1, alpha >= 1, c > 0"));
        }
        Ok(Self { n, p, alpha, c })
    }

    /// phi(x) = c ||x||_p^alpha.
    pub fn phi(&self, x: &[f64]) -> Result<f64> {
        self.check_dim(x)?;
        Ok(self.c * lp_norm(x, self.p).powf(self.alpha))
    }

    /// Gradient of phi, defined a.e. (sign pattern at p = 1 kinks).
    pub fn grad_phi(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_dim(x)?;
        let (p, a, c) = (self.p, self.alpha, self.c);
        let norm = lp_norm(x, p);
        if norm == 0.0 {
            return Ok(vec![0.0; self.n]);
        }
        // d/dx_i c ||x||_p^a = c a ||x||_p^{a-p} |x_i|^{p-1} sgn(x_i)
        let coeff = c * a * norm.powf(a - p);
        Ok(x.iter()
            .map(|&xi| coeff * xi.abs().powf(p - 1.0) * xi.signum())
            .collect())
    }

    fn check_dim(&self, x: &[f64]) -> Result<()> {
        if x.len() == self.n {
            Ok(())
        } else {
            Err(Error::Dimension { expected: self.n, got: x.len() })
        }
    }
}

/// ||x||_p for finite p >= 1.
pub fn lp_norm(x: &[f64], p: f64) -> f64 {
    if p == 1.0 {
        return x.iter().map(|v| v.abs()).sum();
    }
    if p == 2.0 {
        return x.iter().map(|v| v * v).sum::<f64>().sqrt();
    }
    // factor out the max for overflow safety
    let m = x.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    if m == 0.0 {
        return 0.0;
    }
    m * x.iter().map(|v| (v.abs() / m).powf(p)).sum::<f64>().powf(1.0 / p)
}

/// ||x||_infinity.
pub fn linf_norm(x: &[f64]) -> f64 {
    x.iter().fold(0.0f64, |acc, v| acc.max(v.abs()))
}

fn gamma_draw(rng: &mut Rng, shape: f64) -> f64 {
    Gamma::new(shape, 1.0).expect("valid gamma shape").sample(rng)
}

// One point with each coordinate eps_i xi_i^{1/p}, xi_i ~ Gamma(1/p, 1).
fn independent_row(rng: &mut Rng, p: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|_| {
            let xi = gamma_draw(rng, 1.0 / p);
            let sign = if rng.gen::<bool>() { 1.0 } else { -1.0 };
            sign * xi.powf(1.0 / p)
        })
        .collect()
}

/// i.i.d. rows with density proportional to e^{-||x||_p^p} (coefficient 1).
pub fn sample_independent(p: f64, n: usize, count: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
    if !(p >= 1.0) || n < 1 || count < 1 {
        return Err(Error::domain("need p >= 1, n >= 1, count >= 1"));
    }
    Ok((0..count)
        .map(|i| independent_row(&mut substream_rng(seed, i as u64), p, n))
        .collect())
}

/// Unit-||.||_p vectors under the cone measure of the l_p sphere.
pub fn sample_lp_sphere(p: f64, n: usize, count: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
    if !(p >= 1.0) || n < 1 || count < 1 {
        return Err(Error::domain("need p >= 1, n >= 1, count >= 1"));
    }
    Ok((0..count)
        .map(|i| {
            let mut rng = substream_rng(seed, i as u64);
            let mut x = independent_row(&mut rng, p, n);
            let norm = lp_norm(&x, p);
            for v in &mut x {
                *v /= norm;
            }
            x
        })
        .collect())
}

/// i.i.d. rows with density proportional to e^{-c ||x||_p^alpha}, via the
/// radial decomposition: V uniform in the l_p ball, t ~ Gamma(n/alpha + 1, 1),
/// output t^{1/alpha} V, then the exact c^{-1/alpha} rescaling.
pub fn sample_norm_power(
    d: &NormPowerDensity,
    count: usize,
    seed: u64,
) -> Result<Vec<Vec<f64>>> {
    NormPowerDensity::new(d.n, d.p, d.alpha, d.c)?;
    if count < 1 {
        return Err(Error::domain("count must be at least 1"));
    }
    let scale = d.c.powf(-1.0 / d.alpha);
    Ok((0..count)
        .map(|i| {
            let mut rng = substream_rng(seed, i as u64);
            let mut x = independent_row(&mut rng, d.p, d.n);
            let norm = lp_norm(&x, d.p);
            let r: f64 = rng.gen::<f64>();
            let radial = r.powf(1.0 / d.n as f64) / norm;
            let t = gamma_draw(&mut rng, d.n as f64 / d.alpha + 1.0);
            let mag = t.powf(1.0 / d.alpha) * radial * scale;
            for v in &mut x {
                *v *= mag;
            }
            x
        })
        .collect())
}

/// Concentration statistics of ||X||_p around (n/(c alpha))^{1/alpha}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConcentrationReport {
    pub target: f64,
    pub median_ratio: f64,
    pub iqr_ratio: (f64, f64),
}

pub fn norm_concentration_check(
    d: &NormPowerDensity,
    count: usize,
    seed: u64,
) -> Result<ConcentrationReport> {
    let rows = sample_norm_power(d, count, seed)?;
    let target = (d.n as f64 / (d.c * d.alpha)).powf(1.0 / d.alpha);
    let ratios: Vec<f64> = rows.iter().map(|x| lp_norm(x, d.p) / target).collect();
    let (q1, q3) = quartiles(&ratios);
    Ok(ConcentrationReport { target, median_ratio: median(&ratios), iqr_ratio: (q1, q3) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::normal_cdf;
    use crate::stats::{ks_statistic, ks_two_sample};

    fn column(rows: &[Vec<f64>], j: usize) -> Vec<f64> {
        rows.iter().map(|r| r[j]).collect()
    }

    #[test]
    fn lp_norm_basics() {
        assert_eq!(lp_norm(&[3.0, -4.0], 2.0), 5.0);
        assert_eq!(lp_norm(&[3.0, -4.0], 1.0), 7.0);
        assert_eq!(linf_norm(&[3.0, -4.0]), 4.0);
        assert!((lp_norm(&[1.0, 1.0], 3.0) - 2f64.powf(1.0 / 3.0)).abs() < 1e-12);
    }

    #[test]
    fn norm_power_laplace_marginal() {
        // n=1, p=alpha=1: standard Laplace, E X^2 = 2
        let d = NormPowerDensity::new(1, 1.0, 1.0, 1.0).unwrap();
        let rows = sample_norm_power(&d, 1_000_000, 5).unwrap();
        let m2: f64 = rows.iter().map(|r| r[0] * r[0]).sum::<f64>() / rows.len() as f64;
        assert!((m2 - 2.0).abs() / 2.0 < 0.01, "m2={m2}");
    }

    #[test]
    fn norm_power_gaussian_case() {
        // p=alpha=2: N(0, I/2); per-coordinate variance 1/2
        let d = NormPowerDensity::new(5, 2.0, 2.0, 1.0).unwrap();
        let rows = sample_norm_power(&d, 100_000, 6).unwrap();
        for j in 0..5 {
            let col = column(&rows, j);
            let var: f64 = col.iter().map(|x| x * x).sum::<f64>() / col.len() as f64;
            assert!((var - 0.5).abs() / 0.5 < 0.02, "coord {j}: var={var}");
        }
    }

    #[test]
    fn independent_gaussian_ks() {
        let rows = sample_independent(2.0, 3, 10_000, 7).unwrap();
        for j in 0..3 {
            let col = column(&rows, j);
            // coordinates are N(0, 1/2): CDF Phi(x sqrt 2)
            let d = ks_statistic(&col, |x| normal_cdf(x * std::f64::consts::SQRT_2));
            assert!(d <= 0.02, "coord {j}: ks={d}");
        }
    }

    #[test]
    fn independent_laplace_abs_is_exponential() {
        let rows = sample_independent(1.0, 1, 10_000, 8).unwrap();
        let abs: Vec<f64> = rows.iter().map(|r| r[0].abs()).collect();
        let d = ks_statistic(&abs, |x| if x < 0.0 { 0.0 } else { -(-x).exp_m1() });
        assert!(d <= 0.02, "ks={d}");
    }

    #[test]
    fn cross_sampler_agreement_at_p_eq_alpha() {
        for p in [1.0, 1.5, 2.0, 2.5, 4.0] {
            let d = NormPowerDensity::new(4, p, p, 1.0).unwrap();
            let a = sample_norm_power(&d, 10_000, 29).unwrap();
            let b = sample_independent(p, 4, 10_000, 30).unwrap();
            for j in 0..4 {
                let ks = ks_two_sample(&column(&a, j), &column(&b, j));
                assert!(ks <= 0.02, "p={p} coord {j}: ks={ks}");
            }
        }
    }

    #[test]
    fn coefficient_scaling_law() {
        // X under coefficient c equals c^{-1/alpha} X under coefficient 1
        let alpha = 2.5;
        let d1 = NormPowerDensity::new(3, 1.5, alpha, 1.0).unwrap();
        let dc = NormPowerDensity::new(3, 1.5, alpha, 3.0).unwrap();
        let a = sample_norm_power(&dc, 10_000, 11).unwrap();
        let factor = 3.0f64.powf(-1.0 / alpha);
        let b: Vec<Vec<f64>> = sample_norm_power(&d1, 10_000, 12)
            .unwrap()
            .into_iter()
            .map(|r| r.into_iter().map(|v| v * factor).collect())
            .collect();
        for j in 0..3 {
            let ks = ks_two_sample(&column(&a, j), &column(&b, j));
            assert!(ks <= 0.02, "coord {j}: ks={ks}");
        }
    }

    #[test]
    fn sphere_samples() {
        // exact norm constraint
        for &(p, n) in &[(1.0, 2usize), (2.0, 2), (3.0, 5)] {
            let rows = sample_lp_sphere(p, n, 2_000, 13).unwrap();
            for r in &rows {
                assert!((lp_norm(r, p) - 1.0).abs() < 1e-12);
            }
        }
        // p=2, n=2: angle uniform on the circle
        let rows = sample_lp_sphere(2.0, 2, 10_000, 14).unwrap();
        let angles: Vec<f64> = rows.iter().map(|r| r[1].atan2(r[0])).collect();
        let pi = std::f64::consts::PI;
        let d = ks_statistic(&angles, |t| (t + pi) / (2.0 * pi));
        assert!(d <= 0.02, "ks={d}");
        // p=3, n=5: coordinate exchangeability
        let rows = sample_lp_sphere(3.0, 5, 10_000, 15).unwrap();
        let ks = ks_two_sample(&column(&rows, 0), &column(&rows, 2));
        assert!(ks <= 0.02, "ks={ks}");
    }

    #[test]
    fn mean_and_covariance_structure() {
        let d = NormPowerDensity::new(4, 3.0, 1.5, 1.0).unwrap();
        let n_samp = 20_000;
        let rows = sample_norm_power(&d, n_samp, 16).unwrap();
        let nf = n_samp as f64;
        for j in 0..4 {
            let col = column(&rows, j);
            let mean: f64 = col.iter().sum::<f64>() / nf;
            let sd = (col.iter().map(|x| x * x).sum::<f64>() / nf).sqrt();
            assert!(mean.abs() <= 4.0 * sd / nf.sqrt(), "coord {j}: mean={mean}");
        }
        // off-diagonal correlations vanish
        for j in 0..4 {
            for k in (j + 1)..4 {
                let (cj, ck) = (column(&rows, j), column(&rows, k));
                let cross: f64 =
                    cj.iter().zip(&ck).map(|(a, b)| a * b).sum::<f64>() / nf;
                let vj = cj.iter().map(|x| x * x).sum::<f64>() / nf;
                let vk = ck.iter().map(|x| x * x).sum::<f64>() / nf;
                let corr = cross / (vj * vk).sqrt();
                assert!(corr.abs() <= 4.0 / nf.sqrt(), "({j},{k}): corr={corr}");
            }
        }
    }

    #[test]
    fn determinism_and_substream_chunking() {
        let d = NormPowerDensity::new(3, 2.5, 1.5, 1.0).unwrap();
        let a = sample_norm_power(&d, 10, 99).unwrap();
        let b = sample_norm_power(&d, 10, 99).unwrap();
        assert_eq!(a, b);
        // a longer run starts with the same rows: chunk-size independence
        let c = sample_norm_power(&d, 20, 99).unwrap();
        assert_eq!(a[..], c[..10]);
    }

    #[test]
    fn concentration() {
        // chi-square concentration: ||X||_2 near sqrt(n/2)
        let d = NormPowerDensity::new(100, 2.0, 2.0, 1.0).unwrap();
        let rep = norm_concentration_check(&d, 4_000, 17).unwrap();
        assert!((rep.median_ratio - 1.0).abs() < 0.05, "{rep:?}");

        // l1 case: ||X||_1 near n
        let d = NormPowerDensity::new(1000, 1.0, 1.0, 1.0).unwrap();
        let rep = norm_concentration_check(&d, 2_000, 18).unwrap();
        assert!((rep.median_ratio - 1.0).abs() < 0.03, "{rep:?}");
        assert!((rep.target - 1000.0).abs() < 1e-9);

        // n=1: no concentration, just report
        let d = NormPowerDensity::new(1, 2.0, 2.0, 1.0).unwrap();
        let rep = norm_concentration_check(&d, 2_000, 19).unwrap();
        assert!(rep.iqr_ratio.1 - rep.iqr_ratio.0 > 0.3, "{rep:?}");
    }

    #[test]
    fn grad_phi_values() {
        let d = NormPowerDensity::new(2, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(d.grad_phi(&[0.5, -2.0]).unwrap(), vec![1.0, -1.0]);
        let d = NormPowerDensity::new(2, 2.0, 2.0, 1.0).unwrap();
        let g = d.grad_phi(&[0.5, -2.0]).unwrap();
        assert!((g[0] - 1.0).abs() < 1e-12 && (g[1] + 4.0).abs() < 1e-12);
        assert!(d.grad_phi(&[1.0]).is_err());
    }
}
