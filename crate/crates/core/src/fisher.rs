//! Closed-form and asymptotic moment and Fisher-information formulas for
//! norm-power densities e^{-c ||x||_p^alpha}, Monte Carlo estimators, the
//! uncertainty products, and isotropic constants.
//!
//! Exact formulas are Gamma-ratio products evaluated in log space throughout;
//! all closed forms below are stated for coefficient c = 1, with the exact
//! scaling laws (fisher ~ c^{2/alpha}, second moment ~ c^{-2/alpha}) applied
//! by the callers that take a coefficient.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lp_sampler::{linf_norm, sample_norm_power, NormPowerDensity};
use crate::special::ln_gamma;

fn check_np(n: usize, p: f64) -> Result<()> {
    if n >= 1 && p >= 1.0 {
        Ok(())
    } else {
        Err(Error::domain("need n >= 1 and p >= 1"))
    }
}

fn check_npa(n: usize, p: f64, alpha: f64) -> Result<()> {
    check_np(n, p)?;
    if alpha >= 1.0 {
        Ok(())
    } else {
        Err(Error::domain("need alpha >= 1"))
    }
}

/// m-th moment of Gamma(k, 1): Gamma(m + k) / Gamma(k).
pub fn gamma_moment(k: f64, m: f64) -> Result<f64> {
    if !(k > 0.0) || !(m + k > 0.0) {
        return Err(Error::domain("need k > 0 and m + k > 0"));
    }
    Ok((ln_gamma(m + k) - ln_gamma(k)).exp())
}

/// log vol(K_p) = n log 2 + n log Gamma(1/p + 1) - log Gamma(n/p + 1).
pub fn lp_ball_volume_ln(n: usize, p: f64) -> Result<f64> {
    check_np(n, p)?;
    let nf = n as f64;
    Ok(nf * 2f64.ln() + nf * ln_gamma(1.0 / p + 1.0) - ln_gamma(nf / p + 1.0))
}

/// vol(K_p); underflows to 0 for huge n, use the ln variant there.
pub fn lp_ball_volume(n: usize, p: f64) -> Result<f64> {
    Ok(lp_ball_volume_ln(n, p)?.exp())
}

/// log Z = log Gamma(n/alpha + 1) - (n/alpha) log c + log vol(K_p).
pub fn normalizer_ln(n: usize, p: f64, alpha: f64, c: f64) -> Result<f64> {
    check_npa(n, p, alpha)?;
    if !(c > 0.0) {
        return Err(Error::domain("need c > 0"));
    }
    let nf = n as f64;
    Ok(ln_gamma(nf / alpha + 1.0) - nf / alpha * c.ln() + lp_ball_volume_ln(n, p)?)
}

/// Z = integral of e^{-c ||x||_p^alpha}.
pub fn normalizer(n: usize, p: f64, alpha: f64, c: f64) -> Result<f64> {
    Ok(normalizer_ln(n, p, alpha, c)?.exp())
}

/// E ||X||_2^2 at coefficient 1, as a Gamma-ratio product.
pub fn second_moment_exact(n: usize, p: f64, alpha: f64) -> Result<f64> {
    check_npa(n, p, alpha)?;
    let nf = n as f64;
    let ln = ln_gamma(nf / alpha + 1.0 + 2.0 / alpha) - ln_gamma(nf / p + 1.0 + 2.0 / p)
        + ln_gamma(nf / p + 1.0)
        - ln_gamma(nf / alpha + 1.0)
        + nf.ln()
        + ln_gamma(3.0 / p)
        - ln_gamma(1.0 / p);
    Ok(ln.exp())
}

/// The scalar lambda with Fisher information I = lambda * Identity, at
/// coefficient 1.
pub fn fisher_info_exact(n: usize, p: f64, alpha: f64) -> Result<f64> {
    check_npa(n, p, alpha)?;
    let nf = n as f64;
    let ln = ln_gamma((nf + 2.0 * alpha - 2.0) / alpha) - ln_gamma((nf + 2.0 * p - 2.0) / p)
        + ln_gamma(nf / p)
        - ln_gamma(nf / alpha)
        + ln_gamma(2.0 - 1.0 / p)
        - ln_gamma(1.0 / p);
    Ok(alpha * alpha * ln.exp())
}

/// Large-n asymptotics (second_moment, fisher) at coefficient 1.
pub fn asymptotics(n: usize, p: f64, alpha: f64) -> Result<(f64, f64)> {
    check_npa(n, p, alpha)?;
    let nf = n as f64;
    let g = |a: f64, b: f64| (ln_gamma(a) - ln_gamma(b)).exp();
    let sm = nf.powf(2.0 / alpha - 2.0 / p + 1.0)
        * alpha.powf(-2.0 / alpha)
        * p.powf(2.0 / p)
        * g(3.0 / p, 1.0 / p);
    let fi = nf.powf(2.0 / p - 2.0 / alpha)
        * alpha.powf(2.0 / alpha)
        * p.powf(2.0 - 2.0 / p)
        * g(2.0 - 1.0 / p, 1.0 / p);
    Ok((sm, fi))
}

/// The constant c_{p,alpha} = alpha^-1 p^{-alpha + alpha/p}
/// (Gamma(2 - 1/p)/Gamma(1/p))^{-alpha/2}; with coefficient
/// n^{1 - alpha/p} c_{p,alpha} the density has asymptotically unit Fisher
/// information.
pub fn c_coefficient(p: f64, alpha: f64) -> Result<f64> {
    if !(p >= 1.0) || !(alpha >= 1.0) {
        return Err(Error::domain("need p >= 1 and alpha >= 1"));
    }
    let g = (ln_gamma(2.0 - 1.0 / p) - ln_gamma(1.0 / p)).exp();
    Ok(p.powf(-alpha + alpha / p) * g.powf(-alpha / 2.0) / alpha)
}

/// Monte Carlo estimate of ||I||_2 = (1/n) E ||grad phi(X)||_2^2, including
/// the coefficient of `d`.
pub fn fisher_info_mc(d: &NormPowerDensity, count: usize, seed: u64) -> Result<f64> {
    let rows = sample_norm_power(d, count, seed)?;
    let mut acc = 0.0;
    for x in &rows {
        let g = d.grad_phi(x)?;
        acc += g.iter().map(|v| v * v).sum::<f64>();
    }
    Ok(acc / (d.n as f64 * count as f64))
}

/// (E||X||_2^2 * ||I||_2, MC estimate of E||X||_inf^2 * ||I||_2) at
/// coefficient 1, with explicit MC budget.
pub fn uncertainty_products_with(
    n: usize,
    p: f64,
    alpha: f64,
    count: usize,
    seed: u64,
) -> Result<(f64, f64)> {
    let fi = fisher_info_exact(n, p, alpha)?;
    let l2 = second_moment_exact(n, p, alpha)? * fi;
    let d = NormPowerDensity::new(n, p, alpha, 1.0)?;
    let rows = sample_norm_power(&d, count, seed)?;
    let minf: f64 = rows
        .iter()
        .map(|x| {
            let v = linf_norm(x);
            v * v
        })
        .sum::<f64>()
        / count as f64;
    Ok((l2, minf * fi))
}

/// `uncertainty_products_with` at the default MC budget (2 * 10^4, seed 0).
pub fn uncertainty_products(n: usize, p: f64, alpha: f64) -> Result<(f64, f64)> {
    uncertainty_products_with(n, p, alpha, 20_000, 0)
}

/// (L_{K_p}, L_{p,alpha}): isotropic constants of the l_p ball and of the
/// norm-power density.
pub fn isotropic_constants(n: usize, p: f64, alpha: f64) -> Result<(f64, f64)> {
    check_npa(n, p, alpha)?;
    let nf = n as f64;
    let common = (p * p / 4.0).ln() + ln_gamma(3.0 / p) - 3.0 * ln_gamma(1.0 / p);
    let ball2 = common + (1.0 + 2.0 / nf) * ln_gamma(nf / p + 1.0)
        - ln_gamma(nf / p + 1.0 + 2.0 / p);
    let dens2 = common + ln_gamma(nf / alpha + 1.0 + 2.0 / alpha)
        - ln_gamma(nf / p + 1.0 + 2.0 / p)
        + (1.0 + 2.0 / nf) * (ln_gamma(nf / p + 1.0) - ln_gamma(nf / alpha + 1.0));
    Ok(((0.5 * ball2).exp(), (0.5 * dens2).exp()))
}

/// Noise scale t = mu^-1 sqrt(c^{2/alpha} * fisher_info_exact) that makes the
/// shifted norm-power noise asymptotically mu-GDP.
pub fn gdp_scale(n: usize, p: f64, alpha: f64, c: f64, mu: f64) -> Result<f64> {
    if !(mu > 0.0) || !(c > 0.0) {
        return Err(Error::domain("need mu > 0 and c > 0"));
    }
    let fi = c.powf(2.0 / alpha) * fisher_info_exact(n, p, alpha)?;
    Ok(fi.sqrt() / mu)
}

/// Exact, asymptotic, and derived quantities for one (n, p, alpha).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FisherSummary {
    pub n: usize,
    pub p: f64,
    pub alpha: f64,
    pub fisher_norm: f64,
    pub second_moment_l2: f64,
    pub fisher_asymp: f64,
    pub second_moment_asymp: f64,
    pub uncertainty_l2: f64,
    pub isotropic_ball: f64,
    pub isotropic_density: f64,
}

impl FisherSummary {
    pub fn compute(n: usize, p: f64, alpha: f64) -> Result<Self> {
        let fisher_norm = fisher_info_exact(n, p, alpha)?;
        let second_moment_l2 = second_moment_exact(n, p, alpha)?;
        let (second_moment_asymp, fisher_asymp) = asymptotics(n, p, alpha)?;
        let (isotropic_ball, isotropic_density) = isotropic_constants(n, p, alpha)?;
        Ok(Self {
            n,
            p,
            alpha,
            fisher_norm,
            second_moment_l2,
            fisher_asymp,
            second_moment_asymp,
            uncertainty_l2: fisher_norm * second_moment_l2,
            isotropic_ball,
            isotropic_density,
        })
    }
}
