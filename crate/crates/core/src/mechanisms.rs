//! Complete noise-addition mechanisms: calibration into a spec, query
//! answering, expected-error reports, family comparison at a shared budget,
//! and the l_infinity query-answering algorithm.

use serde::{Deserialize, Serialize};

use crate::empirical::{direction, empirical_tradeoff, DirectionMode};
use crate::error::{Error, Result};
use crate::fisher::{fisher_info_exact, gdp_scale, second_moment_exact};
use crate::lp_sampler::{linf_norm, sample_independent, sample_norm_power, NormPowerDensity};
use crate::noise1d::{calibrate, tlap_h, tlap_std_second_moment, NoiseFamily, NoiseModel, PrivacyBudget};
use crate::rng::substream_rng;
use crate::tradeoff::sup_distance;

/// A query answer (or a noisy release of one).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QueryAnswer {
    pub values: Vec<f64>,
}

impl QueryAnswer {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::domain("query answer must be non-empty"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::numeric("non-finite entry in query answer"));
        }
        Ok(Self { values })
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }
}

/// The noise source of a mechanism.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "noise_kind")]
pub enum MechanismNoise {
    /// 1-D noise applied independently per coordinate.
    OneDim { model: NoiseModel },
    /// One n-dimensional norm-power draw.
    HighDim { density: NormPowerDensity },
}

/// M(D) = f(D) + t X, with the expected squared l_2 error precomputed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MechanismSpec {
    pub noise: MechanismNoise,
    pub scale: f64,
    pub sensitivity: f64,
    pub budget: PrivacyBudget,
    pub expected_err_l2: f64,
}

impl MechanismSpec {
    /// Calibrate a 1-D family to the budget; the scale is folded into the
    /// noise model, so t = 1.
    pub fn calibrate_1d(
        budget: PrivacyBudget,
        sensitivity: f64,
        family: NoiseFamily,
    ) -> Result<Self> {
        let model = calibrate(budget, sensitivity, family)?;
        let expected_err_l2 = model.second_moment();
        Ok(Self {
            noise: MechanismNoise::OneDim { model },
            scale: 1.0,
            sensitivity,
            budget,
            expected_err_l2,
        })
    }

    /// mu-GDP mechanism from norm-power noise: t = sensitivity / mu *
    /// sqrt(c^{2/alpha} ||I||_2).
    pub fn gdp_norm_power(d: NormPowerDensity, sensitivity: f64, mu: f64) -> Result<Self> {
        if !(sensitivity > 0.0) {
            return Err(Error::domain("sensitivity must be positive"));
        }
        let t = sensitivity * gdp_scale(d.n, d.p, d.alpha, d.c, mu)?;
        let second = d.c.powf(-2.0 / d.alpha) * second_moment_exact(d.n, d.p, d.alpha)?;
        Ok(Self {
            noise: MechanismNoise::HighDim { density: d },
            scale: t,
            sensitivity,
            budget: PrivacyBudget::Gdp { mu },
            expected_err_l2: t * t * second,
        })
    }

    /// Draw one noise vector of the given dimension (before the t scale).
    fn raw_noise(&self, dim: usize, seed: u64) -> Result<Vec<f64>> {
        match &self.noise {
            MechanismNoise::OneDim { model } => Ok(model.sample(dim, seed)),
            MechanismNoise::HighDim { density } => {
                if density.n != dim {
                    return Err(Error::Dimension { expected: density.n, got: dim });
                }
                Ok(sample_norm_power(density, 1, seed)?.pop().unwrap())
            }
        }
    }
}

/// Release answer + t X; pure in (answer, spec, seed).
pub fn answer_query(answer: &QueryAnswer, spec: &MechanismSpec, seed: u64) -> Result<QueryAnswer> {
    let noise = spec.raw_noise(answer.dim(), seed)?;
    QueryAnswer::new(
        answer
            .values
            .iter()
            .zip(&noise)
            .map(|(a, x)| a + spec.scale * x)
            .collect(),
    )
}

/// Noise variances of the four classical mechanisms at budget (eps, delta),
/// normalized by sensitivity^2 / eps^2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MechanismComparison {
    pub laplace: f64,
    pub gaussian_2006: f64,
    pub truncated_laplace: f64,
    pub gaussian_2019: f64,
}

pub fn compare_mechanisms(eps: f64, delta: f64) -> Result<MechanismComparison> {
    if !(eps > 0.0) || !(0.0..1.0).contains(&delta) || delta == 0.0 {
        return Err(Error::domain("need eps > 0 and delta in (0, 1)"));
    }
    Ok(MechanismComparison {
        laplace: 2.0,
        gaussian_2006: 2.0 * (1.25 / delta).ln(),
        truncated_laplace: tlap_std_second_moment(tlap_h(eps, delta)?),
        gaussian_2019: 1.0,
    })
}

/// Exact-where-possible l_2 error and an MC l_infinity error for a spec.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrReport {
    pub err_l2: f64,
    pub err_linf_mc: f64,
}

pub fn err_report(spec: &MechanismSpec, dim: usize, count: usize, seed: u64) -> Result<ErrReport> {
    let mut acc = 0.0;
    for i in 0..count {
        let noise = spec.raw_noise(dim, seed.wrapping_add(i as u64))?;
        let m = linf_norm(&noise) * spec.scale;
        acc += m * m;
    }
    Ok(ErrReport {
        err_l2: spec.expected_err_l2 * if matches!(spec.noise, MechanismNoise::OneDim { .. }) {
            dim as f64
        } else {
            1.0
        },
        err_linf_mc: acc / count as f64,
    })
}

/// Domination verdict of a mechanism curve against its budget template.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BudgetCheck {
    pub dominates: bool,
    /// Largest template excess over the mechanism curve (positive = violation).
    pub worst_violation: f64,
    /// sup |curve - template|: the budget under-utilization measure.
    pub sup_gap: f64,
}

/// Compare the mechanism's trade-off curve with its budget template. 1-D
/// noise uses the exact curve; norm-power noise uses a Monte Carlo curve at
/// unit shift (tolerance widened by the DKW band).
pub fn budget_check(spec: &MechanismSpec, grid_size: usize, seed: u64) -> Result<BudgetCheck> {
    let template = spec.budget.template_curve()?;
    let (curve, slack) = match &spec.noise {
        MechanismNoise::OneDim { model } => (model.exact_tradeoff(spec.sensitivity)?, 1e-12),
        MechanismNoise::HighDim { density } => {
            let scaled = NormPowerDensity::new(
                density.n,
                density.p,
                density.alpha,
                density.c * spec.scale.powf(-density.alpha),
            )?;
            let v = direction(DirectionMode::RandomUnit, density.n, &mut substream_rng(seed, u64::MAX));
            let v: Vec<f64> = v.iter().map(|t| t * spec.sensitivity).collect();
            let n_mc = 10_000;
            let curve = empirical_tradeoff(&scaled, &v, n_mc, seed)?.to_tradeoff()?;
            // two-sided DKW band at the 1e-3 level
            (curve, 2.0 * (2.0 / 1e-3f64).ln().sqrt() / (n_mc as f64).sqrt())
        }
    };
    let mut worst = f64::NEG_INFINITY;
    let mut sup = 0.0f64;
    for j in 0..grid_size {
        let a = j as f64 / (grid_size - 1) as f64;
        let diff = template.eval(a)? - curve.eval(a)?;
        worst = worst.max(diff);
        sup = sup.max(diff.abs());
    }
    Ok(BudgetCheck { dominates: worst <= slack, worst_violation: worst.max(0.0), sup_gap: sup })
}

/// Report from the l_infinity algorithm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinfReport {
    pub p: f64,
    pub t_scale: f64,
    pub noise_linf: f64,
    /// ||t X||_inf / (sensitivity * sqrt(log log n)).
    pub ratio: f64,
}

/// Answer an n-dimensional query (n >= 16) with independent-coordinate noise
/// at p = 2 log log n, scaled for mu-GDP.
pub fn linf_mechanism(
    answer: &QueryAnswer,
    sensitivity: f64,
    mu: f64,
    seed: u64,
) -> Result<(QueryAnswer, LinfReport)> {
    let n = answer.dim();
    if n < 16 {
        return Err(Error::Unsupported(format!(
            "l_inf mechanism needs n >= 16 (got {n}) so that log log n > 1"
        )));
    }
    if !(sensitivity > 0.0) || !(mu > 0.0) {
        return Err(Error::domain("need sensitivity > 0 and mu > 0"));
    }
    let p = 2.0 * (n as f64).ln().ln();
    let t = sensitivity / mu * fisher_info_exact(n, p, p)?.sqrt();
    let noise = sample_independent(p, n, 1, seed)?.pop().unwrap();
    let noisy = QueryAnswer::new(
        answer.values.iter().zip(&noise).map(|(a, x)| a + t * x).collect(),
    )?;
    let noise_linf = t * linf_norm(&noise);
    let ratio = noise_linf / (sensitivity * (n as f64).ln().ln().sqrt());
    Ok((noisy, LinfReport { p, t_scale: t, noise_linf, ratio }))
}

/// sup gap between the calibrated mechanism's exact curve and the template,
/// convenience wrapper used by the comparison table.
pub fn curve_gap(spec: &MechanismSpec, grid_size: usize) -> Result<f64> {
    match &spec.noise {
        MechanismNoise::OneDim { model } => {
            let curve = model.exact_tradeoff(spec.sensitivity)?;
            let template = spec.budget.template_curve()?;
            sup_distance(&curve, &template, grid_size)
        }
        MechanismNoise::HighDim { .. } => Err(Error::Unsupported(
            "curve_gap is defined for 1-D mechanisms".into(),
        )),
    }
}
