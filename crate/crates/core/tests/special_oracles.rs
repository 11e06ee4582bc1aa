//! Normal cdf, Mills ratio and truncated-normal moments against oracles that
//! share no code with the library: a positive-term erf series, a Lentz
//! continued fraction for erfc, and brute-force quadrature.

use dualvoigt::special::{
    integrate, mills_ratio, std_normal_cdf, std_normal_pdf, std_normal_sf, truncnorm_moments, QuadratureConfig,
    TruncNormSpec,
};
use proptest::prelude::*;

const SQRT_PI: f64 = 1.772_453_850_905_516;

/// erf(x) = 2/√π · e^{-x²} · Σ 2ⁿ x^{2n+1} / (2n+1)!!  (all terms positive)
fn erf_series(x: f64) -> f64 {
    let mut term = x;
    let mut sum = x;
    let mut n = 0.0;
    loop {
        n += 1.0;
        term *= 2.0 * x * x / (2.0 * n + 1.0);
        sum += term;
        if term <= sum * 1e-18 {
            break;
        }
    }
    2.0 / SQRT_PI * (-x * x).exp() * sum
}

/// erfc(x) for x > 0 by modified Lentz on
/// e^{-x²}/√π · 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))).
fn erfc_fraction(x: f64) -> f64 {
    let tiny = 1e-300;
    let mut f = x;
    let mut c = x;
    let mut d = 0.0;
    for k in 1..20_000 {
        let a = k as f64 / 2.0;
        d = x + a * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = x + a / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-17 {
            break;
        }
    }
    (-x * x).exp() / SQRT_PI / f
}

fn oracle_sf(x: f64) -> f64 {
    if x < 0.0 {
        return 1.0 - oracle_sf(-x);
    }
    let z = x / std::f64::consts::SQRT_2;
    if z < 1.0 {
        0.5 - 0.5 * erf_series(z)
    } else {
        0.5 * erfc_fraction(z)
    }
}

fn oracle_cdf(x: f64) -> f64 {
    1.0 - oracle_sf(x)
}

fn oracle_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

#[test]
fn cdf_at_one() {
    let oracle = oracle_cdf(1.0);
    assert!((oracle - 0.841_344_7).abs() < 1e-7);
    assert!((std_normal_cdf(1.0_f64) - oracle).abs() < 1e-15);
    assert!((std_normal_cdf(-1.0_f64) - (1.0 - oracle)).abs() < 1e-15);
}

#[test]
fn cdf_absolute_error_on_grid() {
    let mut worst = 0.0_f64;
    for i in -1600..=1600 {
        let x = i as f64 * 0.005;
        worst = worst.max((std_normal_cdf(x) - oracle_cdf(x)).abs());
    }
    assert!(worst <= 1e-14, "worst abs error {worst:e}");
}

#[test]
fn upper_tail_relative_error() {
    for i in 0..=700 {
        let x = 2.0 + i as f64 * 0.05;
        let o = oracle_sf(x);
        let rel = (std_normal_sf(x) - o).abs() / o;
        // exp(-x²/2) carries ~x²·ε relative error from argument rounding alone
        let tol = 1e-13_f64.max(2.0 * x * x * f64::EPSILON);
        assert!(rel < tol, "x={x} rel={rel:e}");
    }
}

#[test]
fn mills_ratio_examples() {
    let r1 = oracle_sf(1.0) / oracle_pdf(1.0);
    assert!((r1 - 0.655_679).abs() < 1e-6);
    assert!((mills_ratio(1.0_f64) - r1).abs() < 1e-14);
    let r0 = (std::f64::consts::PI / 2.0).sqrt();
    assert!((mills_ratio(0.0_f64) - r0).abs() < 1e-15);
}

#[test]
fn mills_ratio_relative_error_across_branches() {
    for i in -500..=3000 {
        let t = i as f64 * 0.01;
        let o = oracle_sf(t) / oracle_pdf(t);
        let rel = (mills_ratio(t) - o).abs() / o;
        assert!(rel < 1e-12, "t={t} rel={rel:e}");
    }
}

fn truncated_moment_by_quadrature(m: f64, s: f64, k: i32) -> f64 {
    let cfg = QuadratureConfig::new(1e-300, 1e-13, 400).unwrap();
    let kernel = |x: f64| oracle_pdf((x - m) / s) / s;
    let mass = integrate(kernel, 0.0, 40.0, &cfg).unwrap();
    integrate(|x: f64| x.powi(k) * kernel(x), 0.0, 40.0, &cfg).unwrap() / mass
}

#[test]
fn truncnorm_first_two_moments_match_quadrature() {
    let spec = TruncNormSpec::positive_part(-1.0_f64, 1.0).unwrap();
    let m1 = truncated_moment_by_quadrature(-1.0, 1.0, 1);
    let m2 = truncated_moment_by_quadrature(-1.0, 1.0, 2);
    assert!((m1 - 0.525_135).abs() < 1e-6);
    assert!((m2 - 0.474_865).abs() < 1e-6);
    assert!((truncnorm_moments(&spec, 1).unwrap() - m1).abs() < 1e-12);
    assert!((truncnorm_moments(&spec, 2).unwrap() - m2).abs() < 1e-12);
}

#[test]
fn truncnorm_higher_moments_match_quadrature() {
    for &(m, s) in &[(-1.0, 1.0), (0.5, 0.7), (-4.0, 0.5), (2.0, 1.5)] {
        let spec = TruncNormSpec::positive_part(m, s).unwrap();
        for k in 0..=8 {
            let q = truncated_moment_by_quadrature(m, s, k);
            let r = truncnorm_moments(&spec, k as usize).unwrap();
            assert!(
                (r - q).abs() <= 1e-9 * q.abs().max(1.0),
                "m={m} s={s} k={k}: {r} vs {q}"
            );
        }
    }
}

proptest! {
    #[test]
    fn cdf_reflection(x in -8.0_f64..8.0) {
        prop_assert!((std_normal_cdf(x) + std_normal_cdf(-x) - 1.0).abs() <= 1e-14);
    }

    #[test]
    fn mills_identity(t in -5.0_f64..5.0) {
        let lhs = mills_ratio(t) * std_normal_pdf(t) + std_normal_cdf(t);
        prop_assert!((lhs - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn cdf_monotone(x in -10.0_f64..10.0, dx in 0.0_f64..1.0) {
        prop_assert!(std_normal_cdf(x) <= std_normal_cdf(x + dx));
    }

    #[test]
    fn mills_positive(t in -30.0_f64..1e6) {
        prop_assert!(mills_ratio(t) > 0.0);
    }
}
