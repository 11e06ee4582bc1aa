//! Dual-Voigt fitting by the absolute-value transform.
//!
//! With tᵢ = |yᵢ| the sample is a draw from N(m, s²) truncated to (0, ∞),
//! where m = −γ/σ² and s² = 1/σ². The truncated normal is fitted in
//! (m, ln s) by Nelder–Mead, either by maximum likelihood or by matching its
//! mean and variance, and the latent pair is mapped back to (γ, σ).

use std::fmt;

use crate::error::{Error, Result};
use crate::estimation::simplex::{nelder_mead, SimplexConfig};
use crate::estimation::stats::SufficientStats;
use crate::scalar::{c, Scalar};
use crate::special::normal::ln_std_normal_sf;
use crate::special::truncnorm::TruncNormSpec;

/// Smallest sample either fit accepts.
pub const MIN_SAMPLE_SIZE: usize = 10;

/// Moment residual norm below which a MoM fit counts as solved.
pub const MOM_RESIDUAL_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Ml,
    Mom,
}

impl Method {
    pub const ALL: [Method; 2] = [Method::Ml, Method::Mom];

    pub fn label(&self) -> &'static str {
        match self {
            Method::Ml => "ML",
            Method::Mom => "MoM",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult<T> {
    pub gamma_hat: T,
    pub sigma_hat: T,
    pub method: Method,
    /// Latent normal mean m̂.
    pub latent_m: T,
    /// Latent normal variance ŝ².
    pub latent_var: T,
    /// Mean negative log-likelihood (ML) or squared moment residual (MoM).
    pub objective_value: T,
    pub iterations: usize,
    /// False when the optimizer stalled short of tolerance, the moment
    /// equations were left unsolved, or γ̂ came out non-positive.
    pub converged: bool,
}

/// γ̂ = −m/v and σ̂² = 1/v.
pub fn back_map<T: Scalar>(latent_m: T, latent_var: T) -> Result<(T, T)> {
    if !(latent_var > T::zero()) {
        return Err(Error::NonPositiveVariance(latent_var.to_f64().unwrap_or(f64::NAN)));
    }
    Ok((-latent_m / latent_var, T::one() / latent_var))
}

/// Summaries of t = |y| that both fits work from.
#[derive(Debug, Clone, Copy)]
struct Summary<T> {
    mean: T,
    var: T,
}

fn summarize<T: Scalar>(sample: &[T]) -> Result<Summary<T>> {
    if sample.len() < MIN_SAMPLE_SIZE {
        return Err(Error::SampleTooSmall {
            n: sample.len(),
            min: MIN_SAMPLE_SIZE,
        });
    }
    if sample.iter().any(|y| !y.is_finite()) {
        return Err(Error::DegenerateSample("sample contains non-finite values".into()));
    }
    let first = sample[0].abs();
    if sample.iter().all(|y| y.abs() == first) {
        return Err(Error::DegenerateSample("all |y| are equal".into()));
    }
    let stats = SufficientStats::from_sample(sample)?;
    let var = stats.var_abs();
    if !(var > T::zero()) {
        return Err(Error::DegenerateSample("|y| has zero variance".into()));
    }
    Ok(Summary {
        mean: stats.mean_abs(),
        var,
    })
}

/// Mean negative log-likelihood of the positive-part truncated normal at
/// (m, ln s), given the mean and population variance of t.
fn mean_nll<T: Scalar>(summary: &Summary<T>, m: T, ln_s: T) -> T {
    let s = ln_s.exp();
    let d = summary.mean - m;
    ln_s + c::<T>(0.5) * T::TAU().ln() + (summary.var + d * d) / (c::<T>(2.0) * s * s) + ln_std_normal_sf(-m / s)
}

/// Mean log-likelihood of |y| under the truncated normal at (m, ln s).
pub fn mean_log_likelihood<T: Scalar>(sample: &[T], m: T, ln_s: T) -> Result<T> {
    Ok(-mean_nll(&summarize(sample)?, m, ln_s))
}

fn moment_residuals<T: Scalar>(summary: &Summary<T>, m: T, ln_s: T) -> Option<(T, T)> {
    let spec = TruncNormSpec::positive_part(m, ln_s.exp()).ok()?;
    let r1 = (spec.mean() - summary.mean) / summary.var.sqrt();
    let r2 = (spec.variance() - summary.var) / summary.var;
    Some((r1, r2))
}

fn start_point<T: Scalar>(summary: &Summary<T>) -> [T; 2] {
    let sd = summary.var.sqrt();
    [summary.mean - sd, sd.ln()]
}

fn finish<T: Scalar>(
    method: Method,
    theta: [T; 2],
    objective_value: T,
    iterations: usize,
    solved: bool,
) -> Result<FitResult<T>> {
    let s = theta[1].exp();
    let latent_var = s * s;
    let (gamma_hat, sigma2) = back_map(theta[0], latent_var)?;
    let sigma_hat = sigma2.sqrt();
    let converged = solved && gamma_hat > T::zero() && sigma_hat.is_finite() && sigma_hat > T::zero();
    Ok(FitResult {
        gamma_hat,
        sigma_hat,
        method,
        latent_m: theta[0],
        latent_var,
        objective_value,
        iterations,
        converged,
    })
}

/// Maximum-likelihood fit of the dual Voigt.
pub fn fit_ml<T: Scalar>(sample: &[T], cfg: &SimplexConfig<T>) -> Result<FitResult<T>> {
    let summary = summarize(sample)?;
    let out = nelder_mead(|x: &[T; 2]| mean_nll(&summary, x[0], x[1]), start_point(&summary), cfg)?;
    if !out.converged {
        return Err(Error::OptimizerFailed {
            iterations: out.iterations,
        });
    }
    finish(Method::Ml, out.argmin, out.value, out.iterations, true)
}

/// Method-of-moments fit: the truncated-normal mean and variance are matched
/// to those of |y| by minimizing the squared standardized residuals.
pub fn fit_mom<T: Scalar>(sample: &[T], cfg: &SimplexConfig<T>) -> Result<FitResult<T>> {
    let summary = summarize(sample)?;
    let objective = |x: &[T; 2]| match moment_residuals(&summary, x[0], x[1]) {
        Some((r1, r2)) => r1 * r1 + r2 * r2,
        None => T::nan(),
    };
    let out = nelder_mead(objective, start_point(&summary), cfg)?;
    if !out.converged {
        return Err(Error::OptimizerFailed {
            iterations: out.iterations,
        });
    }
    let solved = out.value.sqrt() < c(MOM_RESIDUAL_TOL);
    finish(Method::Mom, out.argmin, out.value, out.iterations, solved)
}

pub fn fit<T: Scalar>(sample: &[T], method: Method, cfg: &SimplexConfig<T>) -> Result<FitResult<T>> {
    match method {
        Method::Ml => fit_ml(sample, cfg),
        Method::Mom => fit_mom(sample, cfg),
    }
}
