//! Adaptive Gauss–Kronrod (7/15) quadrature with infinite-range mapping.

use crate::error::{Error, Result};
use crate::scalar::{c, Scalar};

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig<T> {
    pub abs_tol: T,
    pub rel_tol: T,
    pub max_subdivisions: usize,
}

impl<T: Scalar> Default for QuadratureConfig<T> {
    fn default() -> Self {
        Self {
            abs_tol: c(1e-10),
            rel_tol: c(1e-8),
            max_subdivisions: 200,
        }
    }
}

impl<T: Scalar> QuadratureConfig<T> {
    pub fn new(abs_tol: T, rel_tol: T, max_subdivisions: usize) -> Result<Self> {
        let cfg = Self {
            abs_tol,
            rel_tol,
            max_subdivisions,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > T::zero()) || !(self.rel_tol > T::zero()) {
            return Err(Error::InvalidParameter(format!(
                "quadrature tolerances must be positive (abs {}, rel {})",
                self.abs_tol, self.rel_tol
            )));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::InvalidParameter("max_subdivisions must be at least 1".into()));
        }
        Ok(())
    }
}

/// Integral value with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<T> {
    pub value: T,
    pub abs_error: T,
    pub intervals: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment<T> {
    a: T,
    b: T,
    value: T,
    error: T,
}

fn kronrod15<T: Scalar, F: Fn(T) -> T>(f: &F, a: T, b: T) -> Segment<T> {
    let half = (b - a) * c(0.5);
    let center = (a + b) * c(0.5);
    let f_center = f(center);
    let mut res_k = f_center * c(WGK[7]);
    let mut res_g = f_center * c(WG[3]);
    let mut res_abs = res_k.abs();
    let mut fv1 = [T::zero(); 7];
    let mut fv2 = [T::zero(); 7];
    for j in 0..7 {
        let dx = half * c(XGK[j]);
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k = res_k + c::<T>(WGK[j]) * (f1 + f2);
        res_abs = res_abs + c::<T>(WGK[j]) * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g = res_g + c::<T>(WG[j / 2]) * (f1 + f2);
        }
    }
    let mean = res_k * c(0.5);
    let mut res_asc = c::<T>(WGK[7]) * (f_center - mean).abs();
    for j in 0..7 {
        res_asc = res_asc + c::<T>(WGK[j]) * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let width = half.abs();
    let value = res_k * half;
    res_abs = res_abs * width;
    res_asc = res_asc * width;
    let mut error = ((res_k - res_g) * half).abs();
    if res_asc != T::zero() && error != T::zero() {
        let scaled = (c::<T>(200.0) * error / res_asc).powf(c(1.5));
        error = res_asc * scaled.min(T::one());
    }
    let round_off = c::<T>(50.0) * T::epsilon() * res_abs;
    if res_abs > T::min_positive_value() / (c::<T>(50.0) * T::epsilon()) {
        error = error.max(round_off);
    }
    if !value.is_finite() {
        error = T::infinity();
    }
    Segment { a, b, value, error }
}

fn adaptive<T: Scalar, F: Fn(T) -> T>(f: &F, a: T, b: T, cfg: &QuadratureConfig<T>) -> Result<Estimate<T>> {
    cfg.validate()?;
    let mut segments = vec![kronrod15(f, a, b)];
    loop {
        let value = segments.iter().fold(T::zero(), |acc, s| acc + s.value);
        let error = segments.iter().fold(T::zero(), |acc, s| acc + s.error);
        let target = cfg.abs_tol.max(cfg.rel_tol * value.abs());
        if error <= target {
            return Ok(Estimate {
                value,
                abs_error: error,
                intervals: segments.len(),
            });
        }
        let fail = Error::NonConvergence {
            subdivisions: segments.len(),
            abs_error: error.to_f64().unwrap_or(f64::INFINITY),
        };
        if segments.len() >= cfg.max_subdivisions {
            return Err(fail);
        }
        let (worst, _) = segments
            .iter()
            .enumerate()
            .fold((0, T::neg_infinity()), |(bi, be), (i, s)| {
                if s.error > be {
                    (i, s.error)
                } else {
                    (bi, be)
                }
            });
        let seg = segments.swap_remove(worst);
        let mid = (seg.a + seg.b) * c(0.5);
        if !(mid > seg.a.min(seg.b) && mid < seg.a.max(seg.b)) {
            return Err(fail);
        }
        segments.push(kronrod15(f, seg.a, mid));
        segments.push(kronrod15(f, mid, seg.b));
    }
}

/// Adaptive integral of `f` over (`lower`, `upper`) with its error estimate.
///
/// Either bound may be infinite. Half-lines are mapped onto (0, 1) with
/// `t = x / (1 - x)`; the whole line folds both halves into one integrand.
pub fn integrate_estimate<T, F>(f: F, lower: T, upper: T, cfg: &QuadratureConfig<T>) -> Result<Estimate<T>>
where
    T: Scalar,
    F: Fn(T) -> T,
{
    if lower.is_nan() || upper.is_nan() {
        return Err(Error::InvalidParameter("integration bound is NaN".into()));
    }
    if lower == upper {
        return Ok(Estimate {
            value: T::zero(),
            abs_error: T::zero(),
            intervals: 0,
        });
    }
    if lower > upper {
        let est = integrate_estimate(f, upper, lower, cfg)?;
        return Ok(Estimate {
            value: -est.value,
            ..est
        });
    }
    let one = T::one();
    match (lower.is_finite(), upper.is_finite()) {
        (true, true) => adaptive(&f, lower, upper, cfg),
        (true, false) => {
            let g = |x: T| {
                let d = one - x;
                f(lower + x / d) / (d * d)
            };
            adaptive(&g, T::zero(), one, cfg)
        }
        (false, true) => {
            let g = |x: T| {
                let d = one - x;
                f(upper - x / d) / (d * d)
            };
            adaptive(&g, T::zero(), one, cfg)
        }
        (false, false) => {
            let g = |x: T| {
                let d = one - x;
                let t = x / d;
                (f(t) + f(-t)) / (d * d)
            };
            adaptive(&g, T::zero(), one, cfg)
        }
    }
}

/// Adaptive integral of `f` over (`lower`, `upper`).
pub fn integrate<T, F>(f: F, lower: T, upper: T, cfg: &QuadratureConfig<T>) -> Result<T>
where
    T: Scalar,
    F: Fn(T) -> T,
{
    integrate_estimate(f, lower, upper, cfg).map(|e| e.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::normal::std_normal_pdf;

    #[test]
    fn normal_density_over_wide_interval() {
        let cfg = QuadratureConfig::default();
        let v = integrate(std_normal_pdf::<f64>, -8.0, 8.0, &cfg).unwrap();
        assert!((v - 1.0).abs() < 1e-10);
    }

    #[test]
    fn exponential_half_line() {
        let cfg = QuadratureConfig::default();
        let v = integrate(|t: f64| (-t).exp(), 0.0, f64::INFINITY, &cfg).unwrap();
        assert!((v - 1.0).abs() < 1e-10);
    }

    #[test]
    fn whole_line_and_reversed_bounds() {
        let cfg = QuadratureConfig::default();
        let whole = integrate(std_normal_pdf::<f64>, f64::NEG_INFINITY, f64::INFINITY, &cfg).unwrap();
        assert!((whole - 1.0).abs() < 1e-10);
        let left = integrate(std_normal_pdf::<f64>, f64::NEG_INFINITY, 0.0, &cfg).unwrap();
        assert!((left - 0.5).abs() < 1e-10);
        let rev = integrate(|x: f64| x, 1.0, 0.0, &cfg).unwrap();
        assert!((rev + 0.5).abs() < 1e-14);
        assert_eq!(integrate(|x: f64| x, 2.0, 2.0, &cfg).unwrap(), 0.0);
    }

    #[test]
    fn quintic_is_exact() {
        let cfg = QuadratureConfig::default();
        let p = |x: f64| 3.0 * x.powi(5) - x.powi(4) + 2.0 * x.powi(3) - 7.0 * x + 1.5;
        // antiderivative evaluated on [-1.5, 2.25]
        let anti = |x: f64| 0.5 * x.powi(6) - x.powi(5) / 5.0 + 0.5 * x.powi(4) - 3.5 * x * x + 1.5 * x;
        let v = integrate(p, -1.5, 2.25, &cfg).unwrap();
        let exact = anti(2.25) - anti(-1.5);
        assert!((v - exact).abs() < 1e-12 * exact.abs().max(1.0));
    }

    #[test]
    fn reports_nonconvergence() {
        let cfg = QuadratureConfig::new(1e-14, 1e-14, 3).unwrap();
        let r = integrate(|x: f64| (1.0 / x).sin(), 1e-3, 1.0, &cfg);
        assert!(matches!(r, Err(Error::NonConvergence { .. })));
    }

    #[test]
    fn rejects_bad_config() {
        assert!(QuadratureConfig::new(0.0_f64, 1e-8, 10).is_err());
        assert!(QuadratureConfig::new(1e-8_f64, 1e-8, 0).is_err());
    }
}
