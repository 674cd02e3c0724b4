//! Trade-off (ROC) functions beta = f(alpha): closed-form templates, curves
//! induced by shifting 1-D log-concave noise, affine conjugation under
//! truncation, empirical piecewise-linear curves, and distances between
//! curves.
//!
//! All curve objects are immutable after construction.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::noise1d::NoiseModel;
use crate::special::{bisect_smallest, normal_cdf, normal_quantile};
use crate::stats::Cdf;

/// A trade-off function on [0, 1].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum TradeoffCurve {
    /// The (eps, delta)-DP template max(0, 1 - delta - e^eps a, e^-eps (1 - delta - a)).
    FEpsDelta { eps: f64, delta: f64 },
    /// G_mu(a) = Phi(-Phi^-1(a) - mu).
    Gdp { mu: f64 },
    /// Curve of testing X vs X + shift for 1-D noise X.
    NoiseShift { model: NoiseModel, shift: f64 },
    /// Affine conjugate L_h o f o L_h^-1 of `inner`, where L_h is built from
    /// the CDF of `base` and half-width `h`. Values are clamped to [0, 1];
    /// `clamped` records the alpha interval where clamping was active.
    Truncated {
        inner: Box<TradeoffCurve>,
        base: NoiseModel,
        h: f64,
        clamped: Option<(f64, f64)>,
    },
    /// Piecewise-linear interpolant through (alphas[j], betas[j]).
    Empirical { alphas: Vec<f64>, betas: Vec<f64> },
}

/// f_{eps,delta}(alpha), the trade-off template equivalent to (eps, delta)-DP.
pub fn eval_f_eps_delta(eps: f64, delta: f64, alpha: f64) -> Result<f64> {
    if !(eps >= 0.0) || !(0.0..=1.0).contains(&delta) {
        return Err(Error::domain("need eps >= 0 and delta in [0, 1]"));
    }
    check_alpha(alpha)?;
    let a = (1.0 - delta - eps.exp() * alpha).max((-eps).exp() * (1.0 - delta - alpha));
    Ok(a.max(0.0).min(1.0))
}

/// G_mu(alpha) = Phi(-Phi^-1(alpha) - mu).
pub fn eval_gdp(mu: f64, alpha: f64) -> Result<f64> {
    if !(mu >= 0.0) {
        return Err(Error::domain("need mu >= 0"));
    }
    check_alpha(alpha)?;
    if alpha <= 0.0 {
        return Ok(1.0);
    }
    if alpha >= 1.0 {
        return Ok(0.0);
    }
    Ok(normal_cdf(-normal_quantile(alpha) - mu))
}

/// T[X, X + t](alpha) = F(F^-1(1 - alpha) - t) for noise with CDF F.
pub fn tradeoff_from_cdf<C: Cdf>(cdf: &C, t: f64, alpha: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::domain("shift must be nonnegative"));
    }
    check_alpha(alpha)?;
    let x = cdf.quantile(1.0 - alpha);
    let beta = if x.is_finite() {
        cdf.cdf(x - t)
    } else if x > 0.0 {
        1.0
    } else {
        0.0
    };
    if !beta.is_finite() {
        return Err(Error::numeric(format!("quantile inversion failed at alpha = {alpha}")));
    }
    Ok(beta.clamp(0.0, 1.0))
}

fn check_alpha(alpha: f64) -> Result<()> {
    if (0.0..=1.0).contains(&alpha) {
        Ok(())
    } else {
        Err(Error::domain(format!("alpha = {alpha} outside [0, 1]")))
    }
}

/// The CDF-space affine map L_h(x) = (x - F(-h)) / (F(h) - F(-h)).
fn l_h(base: &NoiseModel, h: f64, x: f64) -> f64 {
    let lo = base.cdf(-h);
    let hi = base.cdf(h);
    (x - lo) / (hi - lo)
}

fn l_h_inv(base: &NoiseModel, h: f64, y: f64) -> f64 {
    let lo = base.cdf(-h);
    let hi = base.cdf(h);
    lo + y * (hi - lo)
}

/// Conjugate `f` by the truncation map of `base` at half-width `h`:
/// f^h = L_h o f o L_h^-1, clamped to [0, 1]. The clamped alpha interval
/// (detected on a dense grid) is recorded on the returned curve.
pub fn affine_conjugate(f: &TradeoffCurve, base: &NoiseModel, h: f64) -> Result<TradeoffCurve> {
    base.validate()?;
    if !(h > 0.0) {
        return Err(Error::domain("truncation half-width must be positive"));
    }
    if base.cdf(h) - base.cdf(-h) <= 0.0 {
        return Err(Error::numeric("degenerate truncation: F(h) = F(-h)"));
    }
    let mut clamped: Option<(f64, f64)> = None;
    let grid = 2001;
    for j in 0..grid {
        let alpha = j as f64 / (grid - 1) as f64;
        let raw = conjugate_raw(f, base, h, alpha)?;
        if !(0.0..=1.0).contains(&raw) {
            clamped = Some(match clamped {
                None => (alpha, alpha),
                Some((lo, hi)) => (lo.min(alpha), hi.max(alpha)),
            });
        }
    }
    Ok(TradeoffCurve::Truncated {
        inner: Box::new(f.clone()),
        base: base.clone(),
        h,
        clamped,
    })
}

fn conjugate_raw(inner: &TradeoffCurve, base: &NoiseModel, h: f64, alpha: f64) -> Result<f64> {
    let x = l_h_inv(base, h, alpha);
    Ok(l_h(base, h, inner.eval(x.clamp(0.0, 1.0))?))
}

impl TradeoffCurve {
    pub fn f_eps_delta(eps: f64, delta: f64) -> Result<Self> {
        eval_f_eps_delta(eps, delta, 0.0)?;
        Ok(TradeoffCurve::FEpsDelta { eps, delta })
    }

    pub fn gdp(mu: f64) -> Result<Self> {
        eval_gdp(mu, 0.0)?;
        Ok(TradeoffCurve::Gdp { mu })
    }

    /// Piecewise-linear curve through the given grid. Alphas must be strictly
    /// increasing in [0, 1]; betas must lie in [0, 1].
    pub fn empirical(alphas: Vec<f64>, betas: Vec<f64>) -> Result<Self> {
        if alphas.len() != betas.len() {
            return Err(Error::Dimension { expected: alphas.len(), got: betas.len() });
        }
        if alphas.len() < 2 {
            return Err(Error::domain("empirical curve needs at least two grid points"));
        }
        if alphas.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::domain("empirical alphas must be strictly increasing"));
        }
        let in_unit = |v: &f64| (0.0..=1.0).contains(v);
        if !alphas.iter().all(in_unit) || !betas.iter().all(in_unit) {
            return Err(Error::domain("empirical grid values must lie in [0, 1]"));
        }
        Ok(TradeoffCurve::Empirical { alphas, betas })
    }

    /// Evaluate the curve at alpha.
    pub fn eval(&self, alpha: f64) -> Result<f64> {
        match self {
            TradeoffCurve::FEpsDelta { eps, delta } => eval_f_eps_delta(*eps, *delta, alpha),
            TradeoffCurve::Gdp { mu } => eval_gdp(*mu, alpha),
            TradeoffCurve::NoiseShift { model, shift } => tradeoff_from_cdf(model, *shift, alpha),
            TradeoffCurve::Truncated { inner, base, h, .. } => {
                check_alpha(alpha)?;
                Ok(conjugate_raw(inner, base, *h, alpha)?.clamp(0.0, 1.0))
            }
            TradeoffCurve::Empirical { alphas, betas } => {
                check_alpha(alpha)?;
                Ok(interp(alphas, betas, alpha))
            }
        }
    }

    /// Alpha interval where affine conjugation needed clamping, if any.
    pub fn clamped_region(&self) -> Option<(f64, f64)> {
        match self {
            TradeoffCurve::Truncated { clamped, .. } => *clamped,
            _ => None,
        }
    }

    /// Two-column CSV (alpha, beta) on a uniform grid.
    pub fn to_csv(&self, grid_size: usize) -> Result<String> {
        let mut out = String::from("alpha,beta\n");
        for j in 0..grid_size {
            let alpha = j as f64 / (grid_size - 1) as f64;
            let beta = self.eval(alpha)?;
            out.push_str(&format!("{alpha:.12},{beta:.12}\n"));
        }
        Ok(out)
    }

    /// Parse a two-column CSV back into an empirical curve.
    pub fn from_csv(csv: &str) -> Result<Self> {
        let mut alphas = Vec::new();
        let mut betas = Vec::new();
        for (i, line) in csv.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || (i == 0 && line.starts_with("alpha")) {
                continue;
            }
            let (a, b) = line
                .split_once(',')
                .ok_or_else(|| Error::domain(format!("bad CSV line {}", i + 1)))?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|e| Error::domain(format!("bad CSV number on line {}: {e}", i + 1)))
            };
            alphas.push(parse(a)?);
            betas.push(parse(b)?);
        }
        TradeoffCurve::empirical(alphas, betas)
    }

    /// Verify the curve is non-increasing and convex on a uniform grid.
    pub fn check_shape(&self, grid_size: usize, tol: f64) -> Result<()> {
        let betas: Vec<f64> = (0..grid_size)
            .map(|j| self.eval(j as f64 / (grid_size - 1) as f64))
            .collect::<Result<_>>()?;
        for w in betas.windows(2) {
            if w[1] > w[0] + tol {
                return Err(Error::numeric(format!("curve not non-increasing: {} -> {}", w[0], w[1])));
            }
        }
        for w in betas.windows(3) {
            // successive drops must shrink in magnitude
            if (w[0] - w[1]) - (w[1] - w[2]) < -tol {
                return Err(Error::numeric("curve not convex on grid"));
            }
        }
        Ok(())
    }
}

fn interp(alphas: &[f64], betas: &[f64], alpha: f64) -> f64 {
    if alpha <= alphas[0] {
        return betas[0];
    }
    if alpha >= alphas[alphas.len() - 1] {
        return betas[betas.len() - 1];
    }
    let k = alphas.partition_point(|&a| a < alpha);
    let (a0, a1) = (alphas[k - 1], alphas[k]);
    let (b0, b1) = (betas[k - 1], betas[k]);
    b0 + (b1 - b0) * (alpha - a0) / (a1 - a0)
}

/// Max of |f - g| over a uniform alpha grid.
pub fn sup_distance(f: &TradeoffCurve, g: &TradeoffCurve, grid_size: usize) -> Result<f64> {
    if grid_size < 2 {
        return Err(Error::domain("grid_size must be at least 2"));
    }
    let mut d = 0.0f64;
    for j in 0..grid_size {
        let alpha = j as f64 / (grid_size - 1) as f64;
        d = d.max((f.eval(alpha)? - g.eval(alpha)?).abs());
    }
    Ok(d)
}

/// True iff f >= g pointwise on the grid, up to a 1e-12 slack.
pub fn dominates(f: &TradeoffCurve, g: &TradeoffCurve, grid_size: usize) -> Result<bool> {
    if grid_size < 2 {
        return Err(Error::domain("grid_size must be at least 2"));
    }
    for j in 0..grid_size {
        let alpha = j as f64 / (grid_size - 1) as f64;
        if f.eval(alpha)? < g.eval(alpha)? - 1e-12 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Levy distance between the empirical CDF of `samples` and a reference CDF:
/// the smallest t with ref(x_k - t) - t <= (k-1)/n and k/n <= ref(x_k + t) + t
/// for every order statistic x_k. Bisection to 1e-10.
pub fn levy_distance_empirical<F: Fn(f64) -> f64>(samples: &[f64], reference: F) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::domain("Levy distance needs at least one sample"));
    }
    let mut xs = samples.to_vec();
    xs.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
    let n = xs.len() as f64;
    let feasible = |t: f64| {
        xs.iter().enumerate().all(|(i, &x)| {
            let k = i as f64 + 1.0;
            reference(x - t) - t <= (k - 1.0) / n + 1e-15 && k / n <= reference(x + t) + t + 1e-15
        })
    };
    Ok(bisect_smallest(feasible, 0.0, 1.0, 1e-10))
}
