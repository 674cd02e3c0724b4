//! One-dimensional noise families: densities, CDFs, quantiles, samplers,
//! exact second moments, and privacy-budget calibration.
//!
//! Every model is a `scale` multiplier applied to the standard member of its
//! family. Calibration never mutates a model, it constructs one.

use rand::Rng as _;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{seeded_rng, Rng};
use crate::special::normal_cdf;
use crate::special::normal_quantile;
use crate::stats::Cdf;
use crate::tradeoff::TradeoffCurve;

/// A 1-D noise law. `scale` multiplies the standard member; `h` is the
/// truncation half-width in standard units; `p_geom` is the geometric
/// parameter of the discrete families.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum NoiseModel {
    Laplace { scale: f64 },
    TruncatedLaplace { scale: f64, h: f64 },
    Gaussian { scale: f64 },
    DoubleGeometric { scale: f64, p_geom: f64 },
    /// Two-sided geometric plus an independent Uniform[-1/2, 1/2].
    Tgu { scale: f64, p_geom: f64 },
}

/// Noise family selector for calibration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NoiseFamily {
    Laplace,
    TruncatedLaplace,
    Gaussian,
    DoubleGeometric,
    Tgu,
}

/// A privacy budget in one of the three notions handled here.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum PrivacyBudget {
    PureDp { eps: f64 },
    ApproxDp { eps: f64, delta: f64 },
    Gdp { mu: f64 },
}

impl PrivacyBudget {
    pub fn validate(&self) -> Result<()> {
        match *self {
            PrivacyBudget::PureDp { eps } if eps >= 0.0 => Ok(()),
            PrivacyBudget::ApproxDp { eps, delta } if eps >= 0.0 && (0.0..1.0).contains(&delta) => {
                Ok(())
            }
            PrivacyBudget::Gdp { mu } if mu >= 0.0 => Ok(()),
            _ => Err(Error::domain("privacy budget parameters out of range")),
        }
    }

    /// The trade-off template the budget corresponds to.
    pub fn template_curve(&self) -> Result<TradeoffCurve> {
        self.validate()?;
        Ok(match *self {
            PrivacyBudget::PureDp { eps } => TradeoffCurve::FEpsDelta { eps, delta: 0.0 },
            PrivacyBudget::ApproxDp { eps, delta } => TradeoffCurve::FEpsDelta { eps, delta },
            PrivacyBudget::Gdp { mu } => TradeoffCurve::Gdp { mu },
        })
    }
}

/// Truncation half-width h = log(1 + (e^eps - 1) / (2 delta)) that makes the
/// truncated Laplace mechanism (eps, delta)-DP.
pub fn tlap_h(eps: f64, delta: f64) -> Result<f64> {
    if eps <= 0.0 || delta <= 0.0 || delta >= 1.0 {
        return Err(Error::domain(
            "tlap_h needs eps > 0 and delta in (0, 1); delta = 0 has no finite truncation",
        ));
    }
    Ok(((eps.exp() - 1.0) / (2.0 * delta)).ln_1p())
}

/// Construct the noise model that spends the given budget on a query with the
/// given sensitivity.
pub fn calibrate(
    budget: PrivacyBudget,
    sensitivity: f64,
    family: NoiseFamily,
) -> Result<NoiseModel> {
    budget.validate()?;
    if sensitivity <= 0.0 {
        return Err(Error::domain("sensitivity must be positive"));
    }
    match (budget, family) {
        (PrivacyBudget::PureDp { eps }, NoiseFamily::Laplace) if eps > 0.0 => {
            Ok(NoiseModel::Laplace { scale: sensitivity / eps })
        }
        (PrivacyBudget::PureDp { eps }, NoiseFamily::DoubleGeometric) if eps > 0.0 => {
            Ok(NoiseModel::DoubleGeometric { scale: sensitivity, p_geom: (-eps).exp() })
        }
        (PrivacyBudget::PureDp { eps }, NoiseFamily::Tgu) if eps > 0.0 => {
            Ok(NoiseModel::Tgu { scale: sensitivity, p_geom: (-eps).exp() })
        }
        (PrivacyBudget::ApproxDp { eps, delta }, NoiseFamily::TruncatedLaplace) => {
            Ok(NoiseModel::TruncatedLaplace {
                scale: sensitivity / eps,
                h: tlap_h(eps, delta)?,
            })
        }
        // The classical calibration sigma = sqrt(2 log(1.25/delta)) / eps.
        (PrivacyBudget::ApproxDp { eps, delta }, NoiseFamily::Gaussian)
            if eps > 0.0 && delta > 0.0 =>
        {
            Ok(NoiseModel::Gaussian {
                scale: sensitivity * (2.0 * (1.25 / delta).ln()).sqrt() / eps,
            })
        }
        (PrivacyBudget::Gdp { mu }, NoiseFamily::Gaussian) if mu > 0.0 => {
            Ok(NoiseModel::Gaussian { scale: sensitivity / mu })
        }
        _ => Err(Error::Calibration(format!(
            "no calibration rule for {budget:?} with {family:?}"
        ))),
    }
}

// Standard Laplace CDF and quantile.
fn lap_cdf(x: f64) -> f64 {
    if x < 0.0 {
        0.5 * x.exp()
    } else {
        1.0 - 0.5 * (-x).exp()
    }
}

fn lap_quantile(u: f64) -> f64 {
    if u < 0.5 {
        (2.0 * u).ln()
    } else {
        -(2.0 * (1.0 - u)).ln()
    }
}

fn dgeom_pmf(p: f64, k: i64) -> f64 {
    (1.0 - p) / (1.0 + p) * p.powi(k.unsigned_abs() as i32)
}

fn dgeom_cdf_int(p: f64, k: i64) -> f64 {
    if k >= 0 {
        1.0 - p.powi(k as i32 + 1) / (1.0 + p)
    } else {
        p.powi(-k as i32) / (1.0 + p)
    }
}

/// Smallest integer k with P(xi <= k) >= u.
fn dgeom_quantile_int(p: f64, u: f64) -> i64 {
    let lnp = p.ln();
    let mut k = if u >= p / (1.0 + p) {
        // right branch: p^{k+1} <= (1-u)(1+p)
        let target = ((1.0 - u) * (1.0 + p)).ln();
        (((target / lnp) - 1.0).ceil() as i64).max(0)
    } else {
        // left branch: p^{-k} >= u(1+p)
        let target = (u * (1.0 + p)).ln();
        (target / lnp).ceil() as i64
    };
    // guard against rounding in the closed-form index
    while dgeom_cdf_int(p, k) < u {
        k += 1;
    }
    while k > i64::MIN && dgeom_cdf_int(p, k - 1) >= u {
        k -= 1;
    }
    k
}

fn tgu_cdf(p: f64, x: f64) -> f64 {
    let k = (x + 0.5).floor();
    let ki = k as i64;
    dgeom_cdf_int(p, ki - 1) + dgeom_pmf(p, ki) * (x - k + 0.5)
}

fn tgu_quantile(p: f64, u: f64) -> f64 {
    let k = dgeom_quantile_int(p, u);
    let lo = dgeom_cdf_int(p, k - 1);
    k as f64 - 0.5 + (u - lo) / dgeom_pmf(p, k)
}

impl NoiseModel {
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            NoiseModel::Laplace { scale } | NoiseModel::Gaussian { scale } => scale > 0.0,
            NoiseModel::TruncatedLaplace { scale, h } => scale > 0.0 && h > 0.0,
            NoiseModel::DoubleGeometric { scale, p_geom } | NoiseModel::Tgu { scale, p_geom } => {
                scale > 0.0 && (0.0..1.0).contains(&p_geom) && p_geom > 0.0
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::domain("invalid noise model parameters"))
        }
    }

    pub fn scale(&self) -> f64 {
        match *self {
            NoiseModel::Laplace { scale }
            | NoiseModel::TruncatedLaplace { scale, .. }
            | NoiseModel::Gaussian { scale }
            | NoiseModel::DoubleGeometric { scale, .. }
            | NoiseModel::Tgu { scale, .. } => scale,
        }
    }

    /// True for families with a density wrt Lebesgue measure.
    pub fn is_continuous(&self) -> bool {
        !matches!(self, NoiseModel::DoubleGeometric { .. })
    }

    /// Density at x. Not defined for the double geometric (use `pmf`).
    pub fn pdf(&self, x: f64) -> Result<f64> {
        let b = self.scale();
        let z = x / b;
        match *self {
            NoiseModel::Laplace { .. } => Ok(0.5 * (-z.abs()).exp() / b),
            NoiseModel::TruncatedLaplace { h, .. } => {
                if z.abs() > h {
                    Ok(0.0)
                } else {
                    Ok(0.5 * (-z.abs()).exp() / ((1.0 - (-h).exp()) * b))
                }
            }
            NoiseModel::Gaussian { .. } => {
                Ok((-0.5 * z * z).exp() / ((2.0 * std::f64::consts::PI).sqrt() * b))
            }
            NoiseModel::Tgu { p_geom, .. } => {
                let k = (z + 0.5).floor() as i64;
                Ok(dgeom_pmf(p_geom, k) / b)
            }
            NoiseModel::DoubleGeometric { .. } => Err(Error::Unsupported(
                "double geometric noise has a pmf, not a density".into(),
            )),
        }
    }

    /// Probability mass at the scaled atom `scale * k` (discrete family only).
    pub fn pmf(&self, k: i64) -> Result<f64> {
        match *self {
            NoiseModel::DoubleGeometric { p_geom, .. } => Ok(dgeom_pmf(p_geom, k)),
            _ => Err(Error::Unsupported("pmf is defined for the double geometric only".into())),
        }
    }

    /// Exact second moment E X^2.
    pub fn second_moment(&self) -> f64 {
        let b2 = self.scale() * self.scale();
        match *self {
            NoiseModel::Laplace { .. } => 2.0 * b2,
            NoiseModel::Gaussian { .. } => b2,
            NoiseModel::TruncatedLaplace { h, .. } => b2 * tlap_std_second_moment(h),
            NoiseModel::DoubleGeometric { p_geom, .. } => b2 * dgeom_second_moment(p_geom),
            NoiseModel::Tgu { p_geom, .. } => b2 * (dgeom_second_moment(p_geom) + 1.0 / 12.0),
        }
    }

    /// Draw `count` samples; a pure function of (self, count, seed).
    pub fn sample(&self, count: usize, seed: u64) -> Vec<f64> {
        let mut rng = seeded_rng(seed);
        (0..count).map(|_| self.sample_one(&mut rng)).collect()
    }

    pub fn sample_one(&self, rng: &mut Rng) -> f64 {
        let b = self.scale();
        match *self {
            NoiseModel::Gaussian { .. } => {
                let z: f64 = rng.sample(StandardNormal);
                b * z
            }
            NoiseModel::Tgu { p_geom, .. } => {
                let u = unit_open(rng);
                let k = dgeom_quantile_int(p_geom, u) as f64;
                let v: f64 = rng.gen::<f64>() - 0.5;
                b * (k + v)
            }
            _ => self.quantile(unit_open(rng)),
        }
    }

    /// The exact trade-off curve of testing X vs X + shift.
    pub fn exact_tradeoff(&self, shift: f64) -> Result<TradeoffCurve> {
        self.validate()?;
        if shift <= 0.0 {
            return Err(Error::domain("shift must be positive"));
        }
        match *self {
            NoiseModel::DoubleGeometric { .. } => Err(Error::Unsupported(
                "exact curve for bare double geometric noise is not provided; \
                 smooth it through the TGU family"
                    .into(),
            )),
            NoiseModel::Tgu { scale, .. } => {
                let m = shift / scale;
                if (m - m.round()).abs() > 1e-9 {
                    Err(Error::Unsupported(
                        "TGU trade-off requires an integer shift in scale units".into(),
                    ))
                } else {
                    Ok(TradeoffCurve::NoiseShift { model: self.clone(), shift })
                }
            }
            _ => Ok(TradeoffCurve::NoiseShift { model: self.clone(), shift }),
        }
    }
}

fn unit_open(rng: &mut Rng) -> f64 {
    rng.gen::<f64>().clamp(1e-16, 1.0 - 1e-16)
}

/// E xi^2 of the standard Laplace truncated at +-h.
///
/// Two expressions for this moment circulate; this is the one confirmed by
/// quadrature (see `tlap_std_second_moment_alt` and the adjudication test).
pub fn tlap_std_second_moment(h: f64) -> f64 {
    2.0 - h * (h + 2.0) / h.exp_m1()
}

/// The competing expression, kept only as a record of the discrepancy; it
/// carries a stray eps^2 factor and loses to quadrature.
pub fn tlap_std_second_moment_alt(h: f64, eps: f64) -> f64 {
    let scaled = (2.0 / (eps * eps)) * (1.0 - eps * eps * h * (h + 2.0) / h.exp_m1());
    scaled * eps * eps
}

fn dgeom_second_moment(p: f64) -> f64 {
    2.0 * p / ((1.0 - p) * (1.0 - p))
}

impl Cdf for NoiseModel {
    fn cdf(&self, x: f64) -> f64 {
        let z = x / self.scale();
        match *self {
            NoiseModel::Laplace { .. } => lap_cdf(z),
            NoiseModel::TruncatedLaplace { h, .. } => {
                if z <= -h {
                    0.0
                } else if z >= h {
                    1.0
                } else {
                    (lap_cdf(z) - lap_cdf(-h)) / (1.0 - (-h).exp())
                }
            }
            NoiseModel::Gaussian { .. } => normal_cdf(z),
            NoiseModel::DoubleGeometric { p_geom, .. } => dgeom_cdf_int(p_geom, z.floor() as i64),
            NoiseModel::Tgu { p_geom, .. } => tgu_cdf(p_geom, z),
        }
    }

    fn quantile(&self, u: f64) -> f64 {
        let b = self.scale();
        match *self {
            NoiseModel::Laplace { .. } => b * lap_quantile(u),
            NoiseModel::TruncatedLaplace { h, .. } => {
                if u <= 0.0 {
                    -b * h
                } else if u >= 1.0 {
                    b * h
                } else {
                    b * lap_quantile(lap_cdf(-h) + u * (1.0 - (-h).exp()))
                }
            }
            NoiseModel::Gaussian { .. } => b * normal_quantile(u),
            NoiseModel::DoubleGeometric { p_geom, .. } => {
                if u <= 0.0 {
                    f64::NEG_INFINITY
                } else if u >= 1.0 {
                    f64::INFINITY
                } else {
                    b * dgeom_quantile_int(p_geom, u) as f64
                }
            }
            NoiseModel::Tgu { p_geom, .. } => {
                if u <= 0.0 {
                    f64::NEG_INFINITY
                } else if u >= 1.0 {
                    f64::INFINITY
                } else {
                    b * tgu_quantile(p_geom, u)
                }
            }
        }
    }
}
