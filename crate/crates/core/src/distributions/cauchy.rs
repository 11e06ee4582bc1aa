use crate::distributions::rng::RngStream;
use crate::error::{Error, Result};
use crate::scalar::{c, Scalar};

/// Centered Cauchy law with scale γ, sampled as a ratio of normals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cauchy<T> {
    gamma: T,
}

impl<T: Scalar> Cauchy<T> {
    pub fn new(gamma: T) -> Result<Self> {
        if !(gamma > T::zero()) || !gamma.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "Cauchy scale must be positive and finite, got {gamma}"
            )));
        }
        Ok(Self { gamma })
    }

    pub fn gamma(&self) -> T {
        self.gamma
    }

    pub fn pdf(&self, x: T) -> T {
        let r = x / self.gamma;
        T::one() / (T::PI() * self.gamma * (T::one() + r * r))
    }

    pub fn cdf(&self, x: T) -> T {
        c::<T>(0.5) + (x / self.gamma).atan() / T::PI()
    }

    /// γ·Z₁/Z₂; a zero denominator is redrawn.
    pub fn sample(&self, rng: &mut RngStream) -> T {
        let numerator: T = rng.std_normal();
        loop {
            let denominator: T = rng.std_normal();
            if denominator != T::zero() {
                return self.gamma * (numerator / denominator);
            }
        }
    }
}
