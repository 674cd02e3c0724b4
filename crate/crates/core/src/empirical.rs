//! Monte Carlo trade-off curves from log-likelihood-ratio thresholding,
//! likelihood projections, and the CLT-to-GDP convergence diagnostics.
//!
//! Two counting conventions are implemented. The primary one thresholds
//! a_i = phi(x_i - v) - phi(x_i) against h_j = -a_(j) and counts
//! {b_i < h_j}; ties are broken by sample index so the degenerate v = 0 case
//! still returns the identity curve. The general variant thresholds raw
//! log-likelihood ratios with strict alpha counts and non-strict beta counts.

use rand::Rng as _;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fisher::{fisher_info_exact, gdp_scale};
use crate::lp_sampler::{sample_norm_power, NormPowerDensity};
use crate::rng::{substream_rng, Rng};
use crate::special::normal_cdf;
use crate::stats::{Cdf, EmpiricalCdf, ks_two_sample};
use crate::tradeoff::{levy_distance_empirical, sup_distance, TradeoffCurve};

/// A piecewise-linear Monte Carlo trade-off curve; the shift-specialized
/// estimator uses the grid {j/N}, the general one a point per distinct
/// threshold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalCurve {
    pub alphas: Vec<f64>,
    pub betas: Vec<f64>,
    pub sample_size: usize,
    pub seed: u64,
}

impl EmpiricalCurve {
    pub fn eval(&self, alpha: f64) -> Result<f64> {
        self.to_tradeoff()?.eval(alpha)
    }

    pub fn to_tradeoff(&self) -> Result<TradeoffCurve> {
        TradeoffCurve::empirical(self.alphas.clone(), self.betas.clone())
    }
}

/// The Fisher scalar of `d` including its coefficient: c^{2/alpha} times the
/// coefficient-1 value.
pub fn fisher_scalar(d: &NormPowerDensity) -> Result<f64> {
    Ok(d.c.powf(2.0 / d.alpha) * fisher_info_exact(d.n, d.p, d.alpha)?)
}

/// P_v(x) = phi(x + v) - phi(x) - (1/2) v^T I v, the centered log-likelihood
/// ratio along v.
pub fn likelihood_projection(d: &NormPowerDensity, v: &[f64], x: &[f64]) -> Result<f64> {
    if v.len() != d.n {
        return Err(Error::Dimension { expected: d.n, got: v.len() });
    }
    let shifted: Vec<f64> = x.iter().zip(v).map(|(a, b)| a + b).collect();
    let viv = fisher_scalar(d)? * v.iter().map(|t| t * t).sum::<f64>();
    Ok(d.phi(&shifted)? - d.phi(x)? - 0.5 * viv)
}

// Collapse floating-point splatter: values within a relative tolerance of a
// cluster start are snapped to that start, so atoms of the log-likelihood
// ratio that round differently per sample are recognized as ties.
fn snap_ties(a: &mut [f64], b: &mut [f64]) {
    let mut pool: Vec<f64> = a.iter().chain(b.iter()).copied().collect();
    pool.sort_unstable_by(|x, y| x.partial_cmp(y).unwrap());
    let mut starts: Vec<f64> = Vec::new();
    for &v in &pool {
        match starts.last() {
            Some(&s) if v - s <= 1e-9 * (1.0 + v.abs()) => {}
            _ => starts.push(v),
        }
    }
    let snap = |v: f64| starts[starts.partition_point(|&s| s <= v) - 1];
    for v in a.iter_mut() {
        *v = snap(*v);
    }
    for v in b.iter_mut() {
        *v = snap(*v);
    }
}

// Count, for each threshold h_j = -a_(j), the b values below it; a tie
// b_i == h_j counts iff the sample index of b_i exceeds that of a_(j).
fn appendix_betas(a: &[f64], b: &[f64]) -> Vec<f64> {
    let n = a.len();
    // snap in threshold space, where b is compared against -a
    let mut na: Vec<f64> = a.iter().map(|v| -v).collect();
    let mut bs: Vec<f64> = b.to_vec();
    snap_ties(&mut na, &mut bs);
    // h descending, ties index-ascending, matching ascending (a, index)
    let mut h_sorted: Vec<(f64, usize)> = na.into_iter().zip(0..).collect();
    h_sorted.sort_unstable_by(|x, y| y.0.partial_cmp(&x.0).unwrap().then(x.1.cmp(&y.1)));
    let mut b_sorted: Vec<(f64, usize)> = bs.into_iter().zip(0..).collect();
    b_sorted.sort_unstable_by(|x, y| x.0.partial_cmp(&y.0).unwrap().then(x.1.cmp(&y.1)));

    let mut betas = Vec::with_capacity(n + 1);
    betas.push(1.0);
    for j in 1..n {
        let (h, aidx) = h_sorted[j - 1];
        let lo = b_sorted.partition_point(|&(v, _)| v < h);
        let hi = b_sorted.partition_point(|&(v, _)| v <= h);
        // indices inside the equal-value range are ascending
        let tie_from = lo + b_sorted[lo..hi].partition_point(|&(_, i)| i <= aidx);
        betas.push((lo + (hi - tie_from)) as f64 / n as f64);
    }
    betas.push(0.0);
    betas
}

/// Monte Carlo trade-off of testing X vs X + v for X ~ d, via the
/// shift-specialized thresholding of phi differences.
pub fn empirical_tradeoff(
    d: &NormPowerDensity,
    v: &[f64],
    count: usize,
    seed: u64,
) -> Result<EmpiricalCurve> {
    if v.len() != d.n {
        return Err(Error::Dimension { expected: d.n, got: v.len() });
    }
    let rows = sample_norm_power(d, count, seed)?;
    let mut a = Vec::with_capacity(count);
    let mut b = Vec::with_capacity(count);
    for x in &rows {
        let minus: Vec<f64> = x.iter().zip(v).map(|(t, s)| t - s).collect();
        let plus: Vec<f64> = x.iter().zip(v).map(|(t, s)| t + s).collect();
        let phix = d.phi(x)?;
        a.push(d.phi(&minus)? - phix);
        b.push(d.phi(&plus)? - phix);
    }
    let betas = appendix_betas(&a, &b);
    let alphas = (0..=count).map(|j| j as f64 / count as f64).collect();
    Ok(EmpiricalCurve { alphas, betas, sample_size: count, seed })
}

/// Monte Carlo trade-off between two arbitrary distributions given their log
/// densities (up to a shared constant) and samplers. Thresholds the raw
/// log-likelihood ratio: alpha counts are strict, beta counts non-strict.
pub fn empirical_tradeoff_general(
    log_density_0: impl Fn(&[f64]) -> f64,
    log_density_1: impl Fn(&[f64]) -> f64,
    sampler_0: impl Fn(&mut Rng) -> Vec<f64>,
    sampler_1: impl Fn(&mut Rng) -> Vec<f64>,
    count: usize,
    seed: u64,
) -> Result<EmpiricalCurve> {
    if count < 1 {
        return Err(Error::domain("count must be at least 1"));
    }
    let llr = |x: &[f64], i: usize| -> Result<f64> {
        let v = log_density_1(x) - log_density_0(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::numeric(format!("non-finite log-likelihood ratio at sample {i}")))
        }
    };
    let mut a = Vec::with_capacity(count);
    let mut b = Vec::with_capacity(count);
    for i in 0..count {
        let x = sampler_0(&mut substream_rng(seed, i as u64));
        a.push(llr(&x, i)?);
        let y = sampler_1(&mut substream_rng(seed, (count + i) as u64));
        b.push(llr(&y, i)?);
    }
    snap_ties(&mut a, &mut b);
    a.sort_unstable_by(|x, y| x.partial_cmp(y).unwrap());
    b.sort_unstable_by(|x, y| x.partial_cmp(y).unwrap());
    // one point per distinct threshold h: alpha = #{a > h}/N, beta = #{b <= h}/N;
    // tied log-likelihood ratios collapse to a single point and the linear
    // interpolation in between realizes the randomized tests
    let mut alphas = vec![0.0];
    let mut betas = vec![1.0];
    let mut hi = count;
    while hi > 0 {
        let h = a[hi - 1];
        let mut lo = hi;
        while lo > 0 && a[lo - 1] == h {
            lo -= 1;
        }
        let alpha = (count - hi) as f64 / count as f64;
        let beta = b.partition_point(|&t| t <= h) as f64 / count as f64;
        if alpha == *alphas.last().unwrap() {
            // the largest threshold also has alpha = 0; keep the smaller beta
            let last = betas.last_mut().unwrap();
            *last = f64::min(*last, beta);
        } else {
            alphas.push(alpha);
            betas.push(beta);
        }
        hi = lo;
    }
    alphas.push(1.0);
    betas.push(0.0);
    Ok(EmpiricalCurve { alphas, betas, sample_size: count, seed })
}

/// T[X, X + v](alpha) = F_v(-F_{-v}^{-1}(alpha) - v^T I v) from the CDFs of
/// the likelihood projections along v and -v.
///
/// Exact only when the projection law is atomless; at an atom the quantile is
/// constant and the formula cannot realize the randomized-test chord.
pub fn tradeoff_from_projection_cdfs<C: Cdf, D: Cdf>(
    f_v: &C,
    f_neg_v: &D,
    v_iv: f64,
    alpha: f64,
) -> Result<f64> {
    if !(v_iv >= 0.0) {
        return Err(Error::domain("v^T I v must be nonnegative"));
    }
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::domain("alpha outside [0, 1]"));
    }
    let q = f_neg_v.quantile(alpha);
    let arg = if q.is_finite() {
        -q - v_iv
    } else if q > 0.0 {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    };
    let beta = if arg.is_finite() {
        f_v.cdf(arg)
    } else if arg > 0.0 {
        1.0
    } else {
        0.0
    };
    Ok(beta.clamp(0.0, 1.0))
}

/// Direction along which privacy is tested.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DirectionMode {
    RandomUnit,
    Axis,
}

/// Unit vector: normalized Gaussian (random mode) or e_1 (axis mode).
pub fn direction(mode: DirectionMode, n: usize, rng: &mut Rng) -> Vec<f64> {
    match mode {
        DirectionMode::Axis => {
            let mut v = vec![0.0; n];
            v[0] = 1.0;
            v
        }
        DirectionMode::RandomUnit => {
            let g: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
            let norm = g.iter().map(|t| t * t).sum::<f64>().sqrt();
            g.into_iter().map(|t| t / norm).collect()
        }
    }
}

/// CLT-to-GDP diagnostics for one experiment configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CltReport {
    /// sup distance between the empirical curve of the scaled mechanism and G_mu.
    pub sup_to_gmu: f64,
    /// KS between sampled P_v(X) and sampled v . grad phi(X).
    pub ks_projection: f64,
    /// Levy distance of standardized v . grad phi(X) samples to the normal CDF.
    pub levy_projection: f64,
    /// Noise scale t applied to the base density.
    pub t_scale: f64,
}

/// Run the convergence experiment: scale the norm-power noise for mu-GDP,
/// estimate its trade-off curve along a unit direction, and report how close
/// it is to G_mu together with the D1/D2-style projection diagnostics.
pub fn clt_deviation(
    n: usize,
    p: f64,
    alpha: f64,
    c: f64,
    mu: f64,
    mode: DirectionMode,
    count: usize,
    seed: u64,
) -> Result<CltReport> {
    let t = gdp_scale(n, p, alpha, c, mu)?;
    // t X with X ~ coefficient c has coefficient c t^-alpha
    let scaled = NormPowerDensity::new(n, p, alpha, c * t.powf(-alpha))?;
    let v = direction(mode, n, &mut substream_rng(seed, u64::MAX));

    let curve = empirical_tradeoff(&scaled, &v, count, seed)?;
    let gmu = TradeoffCurve::Gdp { mu };
    let sup_to_gmu = sup_distance(&curve.to_tradeoff()?, &gmu, 1001)?;

    // fresh samples for the projection diagnostics
    let rows = sample_norm_power(&scaled, count, seed.wrapping_add(1))?;
    let fisher = fisher_scalar(&scaled)?;
    let mut proj = Vec::with_capacity(count);
    let mut grad_proj = Vec::with_capacity(count);
    for x in &rows {
        proj.push(likelihood_projection(&scaled, &v, x)?);
        let g = scaled.grad_phi(x)?;
        grad_proj.push(v.iter().zip(&g).map(|(a, b)| a * b).sum::<f64>());
    }
    let ks_projection = ks_two_sample(&proj, &grad_proj);
    // Var(v . grad phi) = v^T I v = fisher for a unit direction
    let sd = fisher.sqrt();
    let standardized: Vec<f64> = grad_proj.iter().map(|t| t / sd).collect();
    let levy_projection = levy_distance_empirical(&standardized, normal_cdf)?;
    Ok(CltReport { sup_to_gmu, ks_projection, levy_projection, t_scale: t })
}

/// Sample standard deviation of ||grad phi(X)||_2 / sqrt(n), the thin-shell
/// (D2) diagnostic.
pub fn thin_shell_deviation(d: &NormPowerDensity, count: usize, seed: u64) -> Result<f64> {
    let rows = sample_norm_power(d, count, seed)?;
    let vals: Vec<f64> = rows
        .iter()
        .map(|x| {
            let g = d.grad_phi(x)?;
            Ok(g.iter().map(|t| t * t).sum::<f64>().sqrt() / (d.n as f64).sqrt())
        })
        .collect::<Result<_>>()?;
    let mean = vals.iter().sum::<f64>() / count as f64;
    let var = vals.iter().map(|t| (t - mean) * (t - mean)).sum::<f64>() / count as f64;
    Ok(var.sqrt())
}

/// Route the projection samples through `tradeoff_from_projection_cdfs` using
/// empirical projection CDFs; a third estimator of the same curve. Inherits
/// the atomless requirement of the underlying identity.
pub fn tradeoff_via_projections(
    d: &NormPowerDensity,
    v: &[f64],
    count: usize,
    seed: u64,
    grid: usize,
) -> Result<EmpiricalCurve> {
    let rows = sample_norm_power(d, count, seed)?;
    let neg_v: Vec<f64> = v.iter().map(|t| -t).collect();
    let mut pv = Vec::with_capacity(count);
    let mut pnv = Vec::with_capacity(count);
    for x in &rows {
        pv.push(likelihood_projection(d, v, x)?);
        pnv.push(likelihood_projection(d, &neg_v, x)?);
    }
    let f_v = EmpiricalCdf::new(pv)?;
    let f_nv = EmpiricalCdf::new(pnv)?;
    let viv = fisher_scalar(d)? * v.iter().map(|t| t * t).sum::<f64>();
    let alphas: Vec<f64> = (0..grid).map(|j| j as f64 / (grid - 1) as f64).collect();
    let mut betas: Vec<f64> = alphas
        .iter()
        .map(|&a| tradeoff_from_projection_cdfs(&f_v, &f_nv, viv, a))
        .collect::<Result<_>>()?;
    // empirical quantiles are step functions: enforce the monotone envelope
    for j in 1..grid {
        if betas[j] > betas[j - 1] {
            betas[j] = betas[j - 1];
        }
    }
    betas[grid - 1] = 0.0;
    Ok(EmpiricalCurve { alphas, betas, sample_size: count, seed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::noise1d::NoiseModel;
    use crate::special::normal_quantile;
    use crate::tradeoff::eval_gdp;

    fn unit(n: usize) -> Vec<f64> {
        direction(DirectionMode::Axis, n, &mut substream_rng(0, 0))
    }

    #[test]
    fn projection_values() {
        let d = NormPowerDensity::new(3, 2.0, 2.0, 0.5).unwrap();
        // phi = (1/2)||x||^2 has I = Identity, so P_v(x) = v.x
        let v = [0.3, -0.2, 0.5];
        let x = [1.0, 2.0, -1.0];
        let expect = 0.3 - 0.4 - 0.5;
        assert!((likelihood_projection(&d, &v, &x).unwrap() - expect).abs() < 1e-12);
        // zero direction
        assert_eq!(likelihood_projection(&d, &[0.0; 3], &x).unwrap(), 0.0);
        // 1-D Laplace: |x + 1| - |x| - 1/2 at x = 3
        let d = NormPowerDensity::new(1, 1.0, 1.0, 1.0).unwrap();
        assert!((likelihood_projection(&d, &[1.0], &[3.0]).unwrap() - 0.5).abs() < 1e-12);
        assert!(likelihood_projection(&d, &[1.0, 2.0], &[3.0]).is_err());
    }

    #[test]
    fn gaussian_empirical_curve_close_to_g1() {
        // N(0, I) through coefficient 1/2; unit shift gives exactly G_1
        let d = NormPowerDensity::new(30, 2.0, 2.0, 0.5).unwrap();
        let curve = empirical_tradeoff(&d, &unit(30), 10_000, 3).unwrap();
        let g1 = TradeoffCurve::Gdp { mu: 1.0 };
        let sup = sup_distance(&curve.to_tradeoff().unwrap(), &g1, 1001).unwrap();
        assert!(sup <= 0.03, "sup={sup}");
    }

    #[test]
    fn empirical_curve_invariants() {
        let d = NormPowerDensity::new(4, 1.5, 2.5, 1.0).unwrap();
        let mut v = vec![0.0; 4];
        v[1] = 1.0;
        let curve = empirical_tradeoff(&d, &v, 500, 4).unwrap();
        assert_eq!(curve.betas.len(), 501);
        assert_eq!(*curve.betas.last().unwrap(), 0.0);
        assert!(curve.betas.windows(2).all(|w| w[1] <= w[0] + 1e-12));
        assert!(curve.betas.iter().all(|b| (0.0..=1.0).contains(b)));
    }

    #[test]
    fn zero_shift_gives_identity_curve() {
        let d = NormPowerDensity::new(3, 2.0, 2.0, 1.0).unwrap();
        let curve = empirical_tradeoff(&d, &[0.0; 3], 1_000, 5).unwrap();
        for (j, b) in curve.betas.iter().enumerate() {
            let alpha = j as f64 / 1_000.0;
            assert!((b + alpha - 1.0).abs() < 1e-9, "j={j} b={b}");
        }
    }

    #[test]
    fn huge_shift_gives_perfect_test() {
        let d = NormPowerDensity::new(2, 2.0, 2.0, 1.0).unwrap();
        let curve = empirical_tradeoff(&d, &[50.0, 0.0], 1_000, 6).unwrap();
        // all interior values vanish
        assert!(curve.betas[1..].iter().all(|&b| b == 0.0));
    }

    #[test]
    fn general_variant_matches_shift_cases() {
        // identical Gaussians: identity curve within 2/sqrt(N)
        let std_normal = |rng: &mut Rng| vec![rng.sample::<f64, _>(StandardNormal)];
        let ld = |x: &[f64]| -0.5 * x[0] * x[0];
        let curve =
            empirical_tradeoff_general(ld, ld, std_normal, std_normal, 10_000, 7).unwrap();
        let ident = TradeoffCurve::Gdp { mu: 0.0 };
        let sup = sup_distance(&curve.to_tradeoff().unwrap(), &ident, 501).unwrap();
        assert!(sup <= 0.02, "sup={sup}");

        // N(0,1) vs N(1,1): G_1
        let ld1 = |x: &[f64]| -0.5 * (x[0] - 1.0) * (x[0] - 1.0);
        let shifted = |rng: &mut Rng| vec![rng.sample::<f64, _>(StandardNormal) + 1.0];
        let curve =
            empirical_tradeoff_general(ld, ld1, std_normal, shifted, 10_000, 8).unwrap();
        let g1 = TradeoffCurve::Gdp { mu: 1.0 };
        let sup = sup_distance(&curve.to_tradeoff().unwrap(), &g1, 501).unwrap();
        assert!(sup <= 0.03, "sup={sup}");

        // Laplace(1) vs Laplace(1) + 1 against the closed form
        let lap = NoiseModel::Laplace { scale: 1.0 };
        let lap_sampler = |rng: &mut Rng| vec![lap.sample_one(rng)];
        let lap_shift = |rng: &mut Rng| vec![lap.sample_one(rng) + 1.0];
        let ld0 = |x: &[f64]| -x[0].abs();
        let ld1 = |x: &[f64]| -(x[0] - 1.0).abs();
        let curve =
            empirical_tradeoff_general(ld0, ld1, lap_sampler, lap_shift, 10_000, 9).unwrap();
        let exact = lap.exact_tradeoff(1.0).unwrap();
        let sup = sup_distance(&curve.to_tradeoff().unwrap(), &exact, 501).unwrap();
        assert!(sup <= 0.03, "sup={sup}");
    }

    #[test]
    fn general_variant_rejects_non_finite_llr() {
        let bad = |_: &[f64]| f64::NEG_INFINITY;
        let ld = |x: &[f64]| -0.5 * x[0] * x[0];
        let s = |rng: &mut Rng| vec![rng.sample::<f64, _>(StandardNormal)];
        assert!(empirical_tradeoff_general(ld, bad, s, s, 10, 0).is_err());
    }

    #[test]
    fn projection_cdf_route() {
        // analytic Gaussian projections reproduce G_1
        struct StdNormal;
        impl Cdf for StdNormal {
            fn cdf(&self, x: f64) -> f64 {
                normal_cdf(x)
            }
            fn quantile(&self, u: f64) -> f64 {
                normal_quantile(u)
            }
        }
        for j in 1..100 {
            let a = j as f64 / 100.0;
            let b = tradeoff_from_projection_cdfs(&StdNormal, &StdNormal, 1.0, a).unwrap();
            assert!((b - eval_gdp(1.0, a).unwrap()).abs() < 1e-10, "a={a}");
        }
        // v = 0: identity curve
        for j in 0..=10 {
            let a = j as f64 / 10.0;
            let b = tradeoff_from_projection_cdfs(&StdNormal, &StdNormal, 0.0, a).unwrap();
            assert!((b - (1.0 - a)).abs() < 1e-10);
        }
    }

    #[test]
    fn route_equivalence() {
        let v = [1.0];
        let n = 10_000;
        // direct estimator against the closed-form Laplace curve; the
        // projection route is excluded here because the Laplace projection
        // law has atoms
        let d = NormPowerDensity::new(1, 1.0, 1.0, 1.0).unwrap();
        let direct = empirical_tradeoff(&d, &v, n, 10).unwrap().to_tradeoff().unwrap();
        let exact = NoiseModel::Laplace { scale: 1.0 }.exact_tradeoff(1.0).unwrap();
        assert!(sup_distance(&direct, &exact, 501).unwrap() <= 0.03);

        // atomless Gaussian case: all three estimators agree
        let g = NormPowerDensity::new(1, 2.0, 2.0, 0.5).unwrap();
        let direct = empirical_tradeoff(&g, &v, n, 10).unwrap().to_tradeoff().unwrap();
        let via_proj =
            tradeoff_via_projections(&g, &v, n, 10, 501).unwrap().to_tradeoff().unwrap();
        let exact = NoiseModel::Gaussian { scale: 1.0 }.exact_tradeoff(1.0).unwrap();
        assert!(sup_distance(&direct, &exact, 501).unwrap() <= 0.03);
        assert!(sup_distance(&via_proj, &exact, 501).unwrap() <= 0.03);
        assert!(sup_distance(&direct, &via_proj, 501).unwrap() <= 0.02);
    }

    #[test]
    fn clt_report_cases() {
        // exact Gaussian configuration
        let r = clt_deviation(30, 2.0, 2.0, 0.5, 1.0, DirectionMode::RandomUnit, 10_000, 11)
            .unwrap();
        assert!(r.sup_to_gmu <= 0.03, "{r:?}");
        assert!(r.ks_projection <= 0.03, "{r:?}");
        assert!(r.levy_projection <= 0.03, "{r:?}");
        assert!((r.t_scale - 1.0).abs() < 1e-12);

        // an irrational (p, alpha, c) configuration also converges at n = 30
        let (p, a, c) = (std::f64::consts::PI, std::f64::consts::E, 0.577_215_664_901_532_9);
        let r = clt_deviation(30, p, a, c, 1.0, DirectionMode::RandomUnit, 10_000, 12).unwrap();
        assert!(r.sup_to_gmu <= 0.05, "{r:?}");

        // p = 1 along an axis stays 1-D Laplace, far from G_1
        let r = clt_deviation(30, 1.0, 1.0, 1.0, 1.0, DirectionMode::Axis, 10_000, 13).unwrap();
        assert!(r.sup_to_gmu >= 0.1, "{r:?}");
    }

    #[test]
    fn thin_shell_shrinks_with_dimension() {
        use crate::fisher::c_coefficient;
        let (p, alpha) = (3.0, 2.0);
        let c_pa = c_coefficient(p, alpha).unwrap();
        let mut prev = f64::INFINITY;
        for n in [10usize, 30, 100] {
            let coeff = (n as f64).powf(1.0 - alpha / p) * c_pa;
            let d = NormPowerDensity::new(n, p, alpha, coeff).unwrap();
            let sd = thin_shell_deviation(&d, 4_000, 14).unwrap();
            assert!(sd <= prev, "n={n}: sd={sd} prev={prev}");
            prev = sd;
        }
    }
}
