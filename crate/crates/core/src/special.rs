//! Thin wrappers over the special functions the rest of the crate relies on,
//! plus a small quadrature helper used by the moment oracles.
//!
//! The normal CDF/quantile pair is built directly on erfc/erf_inv so that
//! `quantile(1 - u) == -quantile(u)` holds exactly in floating point, which
//! several curve identities depend on.

use std::f64::consts::SQRT_2;

use statrs::function::erf::{erf_inv, erfc};
use statrs::function::gamma::ln_gamma as statrs_ln_gamma;

/// Natural log of the Gamma function.
pub fn ln_gamma(x: f64) -> f64 {
    statrs_ln_gamma(x)
}

/// Γ(a)/Γ(b) computed in log space.
pub fn gamma_ratio(a: f64, b: f64) -> f64 {
    (ln_gamma(a) - ln_gamma(b)).exp()
}

/// Standard normal CDF.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / SQRT_2)
}

/// Standard normal quantile. `u` must be in [0, 1]; the endpoints map to
/// -inf / +inf.
pub fn normal_quantile(u: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&u));
    SQRT_2 * erf_inv(2.0 * u - 1.0)
}

/// Composite Simpson quadrature of `f` on [a, b] with `n` panels
/// (`n` is rounded up to an even number).
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let n = if n % 2 == 0 { n } else { n + 1 };
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + i as f64 * h);
    }
    acc * h / 3.0
}

/// Bisection for the smallest `t` in [lo, hi] with `feasible(t)` true.
/// `feasible` must be monotone (false below the root, true above).
pub fn bisect_smallest<F: Fn(f64) -> bool>(feasible: F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    debug_assert!(feasible(hi));
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if feasible(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_cdf_quantile_roundtrip() {
        for &u in &[1e-6, 0.01, 0.3, 0.5, 0.7, 0.99, 1.0 - 1e-6] {
            let x = normal_quantile(u);
            assert!((normal_cdf(x) - u).abs() < 1e-10, "u={u}");
        }
    }

    #[test]
    fn normal_quantile_is_antisymmetric() {
        for &u in &[0.001, 0.123, 0.25, 0.499] {
            assert_eq!(normal_quantile(1.0 - u), -normal_quantile(u));
        }
    }

    #[test]
    fn simpson_matches_gaussian_integral() {
        // ∫ e^{-x^2} dx = sqrt(pi)
        let v = simpson(|x: f64| (-x * x).exp(), -12.0, 12.0, 4000);
        assert!((v - std::f64::consts::PI.sqrt()).abs() < 1e-12);
    }
}
