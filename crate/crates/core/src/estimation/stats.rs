use crate::error::{Error, Result};
use crate::scalar::{c, Scalar};

/// S₁ = Σ|yᵢ| and S₂ = Σyᵢ², jointly minimal sufficient for the dual Voigt.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SufficientStats<T> {
    pub s1: T,
    pub s2: T,
    pub n: usize,
}

impl<T: Scalar> SufficientStats<T> {
    pub fn from_sample(sample: &[T]) -> Result<Self> {
        if sample.is_empty() {
            return Err(Error::EmptySample);
        }
        let (s1, s2) = sample
            .iter()
            .fold((T::zero(), T::zero()), |(a, b), &y| (a + y.abs(), b + y * y));
        Ok(Self {
            s1,
            s2,
            n: sample.len(),
        })
    }

    /// Mean of |y|.
    pub fn mean_abs(&self) -> T {
        self.s1 / c(self.n as f64)
    }

    /// Population variance of |y|, S₂/n − (S₁/n)², floored at zero.
    pub fn var_abs(&self) -> T {
        let m = self.mean_abs();
        (self.s2 / c(self.n as f64) - m * m).max(T::zero())
    }
}

pub fn sufficient_stats<T: Scalar>(sample: &[T]) -> Result<SufficientStats<T>> {
    SufficientStats::from_sample(sample)
}
