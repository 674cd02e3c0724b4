//! Analysis toolkit for differentially private noise-addition mechanisms:
//! trade-off (ROC) functions, 1-D noise families with budget calibration,
//! high-dimensional norm-power noise samplers, Fisher-information and moment
//! formulas, Monte Carlo trade-off curves with CLT diagnostics, and mechanism
//! assembly.

pub mod empirical;
pub mod error;
pub mod fisher;
pub mod mechanisms;
pub mod lp_sampler;
pub mod noise1d;
pub mod rng;
pub mod special;
pub mod stats;
pub mod tradeoff;

pub use empirical::{clt_deviation, empirical_tradeoff, CltReport, DirectionMode, EmpiricalCurve};
pub use error::{Error, Result};
pub use fisher::FisherSummary;
pub use mechanisms::{
    answer_query, budget_check, compare_mechanisms, linf_mechanism, MechanismSpec, QueryAnswer,
};
pub use lp_sampler::NormPowerDensity;
pub use noise1d::{calibrate, tlap_h, NoiseFamily, NoiseModel, PrivacyBudget};
pub use stats::Cdf;
pub use tradeoff::{
    affine_conjugate, dominates, eval_f_eps_delta, eval_gdp, levy_distance_empirical,
    sup_distance, tradeoff_from_cdf, TradeoffCurve,
};
