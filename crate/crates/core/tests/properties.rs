//! Property tests for the structural invariants: curve shape, monotonicity,
//! domination, and the closed-form scaling laws.

use proptest::prelude::*;

use rocdp::fisher::{asymptotics, c_coefficient, fisher_info_exact, second_moment_exact};
use rocdp::noise1d::{tlap_h, NoiseModel};
use rocdp::tradeoff::{dominates, tradeoff_from_cdf, TradeoffCurve};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn templates_are_valid_tradeoff_curves(
        eps in 0.0..4.0f64,
        delta in 0.0..0.5f64,
        mu in 0.0..4.0f64,
    ) {
        let f = TradeoffCurve::f_eps_delta(eps, delta).unwrap();
        let g = TradeoffCurve::gdp(mu).unwrap();
        f.check_shape(201, 1e-9).unwrap();
        g.check_shape(201, 1e-9).unwrap();
        prop_assert!(f.eval(1.0).unwrap() == 0.0);
        prop_assert!((f.eval(0.0).unwrap() - (1.0 - delta)).abs() < 1e-12);
    }

    #[test]
    fn noise_curves_are_valid_and_monotone_in_shift(
        scale in 0.2..3.0f64,
        t1 in 0.0..2.0f64,
        dt in 0.0..2.0f64,
        gaussian in proptest::bool::ANY,
    ) {
        let model = if gaussian {
            NoiseModel::Gaussian { scale }
        } else {
            NoiseModel::Laplace { scale }
        };
        let t2 = t1 + dt;
        let curve = TradeoffCurve::NoiseShift { model: model.clone(), shift: t2 };
        curve.check_shape(201, 1e-9).unwrap();
        for j in 0..=100 {
            let a = j as f64 / 100.0;
            let b1 = tradeoff_from_cdf(&model, t1, a).unwrap();
            let b2 = tradeoff_from_cdf(&model, t2, a).unwrap();
            prop_assert!(b1 >= b2 - 1e-10);
        }
    }

    #[test]
    fn calibrated_tlap_dominates_template(
        eps in 0.1..3.0f64,
        delta in 1e-4..0.4f64,
    ) {
        let h = tlap_h(eps, delta).unwrap();
        let curve = TradeoffCurve::NoiseShift {
            model: NoiseModel::TruncatedLaplace { scale: 1.0 / eps, h },
            shift: 1.0,
        };
        let template = TradeoffCurve::f_eps_delta(eps, delta).unwrap();
        prop_assert!(dominates(&curve, &template, 501).unwrap());
    }

    #[test]
    fn gdp_ordering_in_mu(mu in 0.0..3.0f64, dmu in 0.0..2.0f64) {
        let weaker = TradeoffCurve::gdp(mu).unwrap();
        let stronger = TradeoffCurve::gdp(mu + dmu).unwrap();
        prop_assert!(dominates(&weaker, &stronger, 201).unwrap());
    }

    #[test]
    fn uncertainty_product_bounded_below(
        n in 2usize..60,
        p in 1.0..4.0f64,
        alpha in 1.0..4.0f64,
    ) {
        let prod = second_moment_exact(n, p, alpha).unwrap()
            * fisher_info_exact(n, p, alpha).unwrap();
        prop_assert!(prod >= n as f64 - 1e-9, "n={n} p={p} alpha={alpha}: {prod}");
    }

    #[test]
    fn normalizing_coefficient_fixes_asymptotic_fisher(
        n in 4usize..200,
        p in 1.0..4.0f64,
        alpha in 1.0..4.0f64,
    ) {
        // with c = n^{1 - alpha/p} c_{p,alpha}, the asymptotic Fisher scalar
        // of the scaled density is exactly 1
        let c = (n as f64).powf(1.0 - alpha / p) * c_coefficient(p, alpha).unwrap();
        let (_, fisher_asymp) = asymptotics(n, p, alpha).unwrap();
        let scaled = c.powf(2.0 / alpha) * fisher_asymp;
        prop_assert!((scaled - 1.0).abs() < 1e-9, "{scaled}");
    }

    #[test]
    fn empirical_csv_roundtrip(mu in 0.1..3.0f64) {
        let g = TradeoffCurve::gdp(mu).unwrap();
        let back = TradeoffCurve::from_csv(&g.to_csv(101).unwrap()).unwrap();
        for j in 0..=100 {
            let a = j as f64 / 100.0;
            prop_assert!((back.eval(a).unwrap() - g.eval(a).unwrap()).abs() < 1e-9);
        }
    }
}
