//! Moments of a normal law truncated from below.

use crate::error::{Error, Result};
use crate::scalar::{c, Scalar};
use crate::special::normal::{inverse_mills_ratio, ln_std_normal_sf};

/// Highest raw moment served by [`truncnorm_moments`].
pub const MAX_MOMENT_ORDER: usize = 8;

/// N(`mean`, `sd`²) restricted to (`lower`, +∞).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncNormSpec<T> {
    mean: T,
    sd: T,
    lower: T,
}

impl<T: Scalar> TruncNormSpec<T> {
    pub fn new(mean: T, sd: T, lower: T) -> Result<Self> {
        if !mean.is_finite() || !lower.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "truncated normal needs finite mean and lower bound, got mean={mean}, lower={lower}"
            )));
        }
        if !(sd > T::zero()) || !sd.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "truncated normal sd must be positive and finite, got {sd}"
            )));
        }
        Ok(Self { mean, sd, lower })
    }

    /// Truncated at zero, the only case the dual Voigt needs.
    pub fn positive_part(mean: T, sd: T) -> Result<Self> {
        Self::new(mean, sd, T::zero())
    }

    pub fn mean_m(&self) -> T {
        self.mean
    }

    pub fn sd_s(&self) -> T {
        self.sd
    }

    pub fn lower(&self) -> T {
        self.lower
    }

    /// Truncation point in standard units, (lower − m) / s.
    pub fn alpha(&self) -> T {
        (self.lower - self.mean) / self.sd
    }

    /// ln P(X > lower) for the untruncated X.
    pub fn ln_mass(&self) -> T {
        ln_std_normal_sf(self.alpha())
    }

    fn far_tail(&self) -> bool {
        self.alpha() > c(TAIL_SWITCH)
    }

    /// Mean m + s·λ(α).
    pub fn mean(&self) -> T {
        if self.far_tail() {
            return self.lower + self.sd * tail_excess_moments(self.alpha())[1];
        }
        self.mean + self.sd * inverse_mills_ratio(self.alpha())
    }

    /// Variance s²(1 + αλ(α) − λ(α)²).
    pub fn variance(&self) -> T {
        let alpha = self.alpha();
        if self.far_tail() {
            let w = tail_excess_moments(alpha);
            return self.sd * self.sd * (w[2] - w[1] * w[1]);
        }
        let lambda = inverse_mills_ratio(alpha);
        self.sd * self.sd * (T::one() + alpha * lambda - lambda * lambda)
    }

    /// Density of the truncated law; zero at and below `lower`.
    pub fn pdf(&self, x: T) -> T {
        if x <= self.lower {
            return T::zero();
        }
        let z = (x - self.mean) / self.sd;
        (-z * z * c(0.5) - c::<T>(0.5) * T::TAU().ln() - self.sd.ln() - self.ln_mass()).exp()
    }
}

/// Above this standardized truncation point moments come from
/// [`tail_excess_moments`] instead of the upward recursion.
pub const TAIL_SWITCH: f64 = 1.0;

/// Depth of the downward ratio recurrence in [`tail_excess_moments`].
const TAIL_LEVELS: usize = 400;

/// E[Wᵏ] for k = 0..=8, where W = Z − α given Z > α.
///
/// The ratios rₖ = E[Wᵏ]/E[Wᵏ⁻¹] satisfy rₖ = k/(α + rₖ₊₁), evaluated
/// downward from an asymptotic start. For large α this is stable, whereas
/// the upward recursion cancels terms of size αᵏ to leave a result of size
/// α⁻ᵏ.
fn tail_excess_moments<T: Scalar>(alpha: T) -> [T; MAX_MOMENT_ORDER + 1] {
    let start: T = c((TAIL_LEVELS + 1) as f64);
    let mut r = (-alpha + (alpha * alpha + c::<T>(4.0) * start).sqrt()) * c(0.5);
    let mut ratios = [T::zero(); MAX_MOMENT_ORDER + 1];
    for k in (1..=TAIL_LEVELS).rev() {
        r = c::<T>(k as f64) / (alpha + r);
        if k <= MAX_MOMENT_ORDER {
            ratios[k] = r;
        }
    }
    let mut w = [T::one(); MAX_MOMENT_ORDER + 1];
    for k in 1..=MAX_MOMENT_ORDER {
        w[k] = w[k - 1] * ratios[k];
    }
    w
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Raw moment E[Tᵏ] of the truncated normal.
///
/// Uses the integration-by-parts recursion
/// `M_k = m·M_{k-1} + (k-1)s²·M_{k-2} + s·lowerᵏ⁻¹·λ(α)`
/// seeded with `M_0 = 1`. When α = (lower − m)/s exceeds 1 that recursion
/// cancels badly, and T = lower + s·W is expanded instead with the moments
/// of the excess W from a stable downward recurrence.
pub fn truncnorm_moments<T: Scalar>(spec: &TruncNormSpec<T>, order: usize) -> Result<T> {
    if order > MAX_MOMENT_ORDER {
        return Err(Error::OrderTooHigh {
            order,
            max: MAX_MOMENT_ORDER,
        });
    }
    if spec.far_tail() {
        let w = tail_excess_moments(spec.alpha());
        let total = (0..=order).fold(T::zero(), |acc, j| {
            acc + c::<T>(binomial(order, j)) * spec.lower.powi((order - j) as i32) * spec.sd.powi(j as i32) * w[j]
        });
        return Ok(total);
    }
    let m = spec.mean;
    let s = spec.sd;
    let lambda = inverse_mills_ratio(spec.alpha());
    let boundary = s * lambda;
    let mut prev = T::zero(); // M_{k-2}
    let mut cur = T::one(); // M_{k-1}
    for k in 1..=order {
        let kf: T = c((k - 1) as f64);
        let next = m * cur + kf * s * s * prev + boundary * spec.lower.powi(k as i32 - 1);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}
