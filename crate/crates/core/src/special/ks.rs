//! Kolmogorov–Smirnov distances between empirical distribution functions.

use crate::error::{Error, Result};
use crate::scalar::{c, Scalar};

/// Asymptotic Kolmogorov critical coefficient at α = 0.01.
pub const KS_COEFF_ALPHA_01: f64 = 1.628;

fn check_sorted<T: Scalar>(xs: &[T]) -> Result<()> {
    if xs.is_empty() {
        return Err(Error::EmptySample);
    }
    if xs.windows(2).any(|w| !(w[0] <= w[1])) {
        return Err(Error::UnsortedSample);
    }
    Ok(())
}

/// Sorts a sample in place (NaNs last) and returns it.
pub fn sorted<T: Scalar>(mut xs: Vec<T>) -> Vec<T> {
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Greater));
    xs
}

/// Two-sample statistic sup |F_a − F_b| for sorted samples.
pub fn ks_two_sample<T: Scalar>(a: &[T], b: &[T]) -> Result<T> {
    check_sorted(a)?;
    check_sorted(b)?;
    let (n, m) = (a.len(), b.len());
    let (nf, mf): (T, T) = (c(n as f64), c(m as f64));
    let (mut i, mut j) = (0, 0);
    let mut d = T::zero();
    while i < n && j < m {
        let x = if a[i] <= b[j] { a[i] } else { b[j] };
        while i < n && a[i] <= x {
            i += 1;
        }
        while j < m && b[j] <= x {
            j += 1;
        }
        let gap = (c::<T>(i as f64) / nf - c::<T>(j as f64) / mf).abs();
        if gap > d {
            d = gap;
        }
    }
    Ok(d)
}

/// One-sample statistic sup |F_n − F| against a continuous cdf.
pub fn ks_one_sample<T: Scalar, F: Fn(T) -> T>(xs: &[T], cdf: F) -> Result<T> {
    check_sorted(xs)?;
    let nf: T = c(xs.len() as f64);
    let mut d = T::zero();
    for (i, &x) in xs.iter().enumerate() {
        let f = cdf(x);
        let above = c::<T>((i + 1) as f64) / nf - f;
        let below = f - c::<T>(i as f64) / nf;
        d = d.max(above).max(below);
    }
    Ok(d)
}

/// Two-sample critical value `1.628·√((n+m)/(nm))` at α = 0.01.
pub fn ks_critical_two_sample(n: usize, m: usize) -> f64 {
    let (n, m) = (n as f64, m as f64);
    KS_COEFF_ALPHA_01 * ((n + m) / (n * m)).sqrt()
}

/// One-sample critical value `1.628/√n` at α = 0.01.
pub fn ks_critical_one_sample(n: usize) -> f64 {
    KS_COEFF_ALPHA_01 / (n as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_samples() {
        let a = [0.1_f64, 0.2, 0.2, 0.9];
        assert_eq!(ks_two_sample(&a, &a).unwrap(), 0.0);
    }

    #[test]
    fn disjoint_points() {
        assert_eq!(ks_two_sample(&[0.0_f64], &[1.0]).unwrap(), 1.0);
    }

    #[test]
    fn ties_across_samples() {
        // F_a jumps to 1 at 1.0; F_b is 0.5 there
        let d = ks_two_sample(&[1.0_f64, 1.0], &[1.0, 2.0]).unwrap();
        assert!((d - 0.5).abs() < 1e-15);
    }

    #[test]
    fn empty_and_unsorted() {
        assert_eq!(ks_two_sample::<f64>(&[], &[1.0]), Err(Error::EmptySample));
        assert_eq!(ks_two_sample(&[2.0_f64, 1.0], &[1.0]), Err(Error::UnsortedSample));
    }

    #[test]
    fn one_sample_uniform() {
        let xs = [0.25_f64, 0.75];
        let d = ks_one_sample(&xs, |x| x).unwrap();
        assert!((d - 0.25).abs() < 1e-15);
    }

    #[test]
    fn critical_values() {
        assert!((ks_critical_two_sample(10_000, 10_000) - 0.023023).abs() < 1e-6);
        assert!((ks_critical_one_sample(100_000) - 0.005148).abs() < 1e-6);
    }
}
