use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Location μ, Cauchy scale γ and normal standard deviation σ.
///
/// The Voigt law with these parameters is Cauchy(μ_X, γ) + N(μ_Y, σ²) with
/// μ = μ_X + μ_Y. Both scales must be strictly positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VoigtParams<T> {
    mu: T,
    gamma: T,
    sigma: T,
}

impl<T: Scalar> VoigtParams<T> {
    pub fn new(mu: T, gamma: T, sigma: T) -> Result<Self> {
        if !mu.is_finite() {
            return Err(Error::InvalidParameter(format!("mu must be finite, got {mu}")));
        }
        if !(gamma > T::zero()) || !gamma.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "gamma must be positive and finite, got {gamma}"
            )));
        }
        if !(sigma > T::zero()) || !sigma.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "sigma must be positive and finite, got {sigma}"
            )));
        }
        Ok(Self { mu, gamma, sigma })
    }

    pub fn centered(gamma: T, sigma: T) -> Result<Self> {
        Self::new(T::zero(), gamma, sigma)
    }

    pub fn mu(&self) -> T {
        self.mu
    }

    pub fn gamma(&self) -> T {
        self.gamma
    }

    pub fn sigma(&self) -> T {
        self.sigma
    }

    pub fn sigma2(&self) -> T {
        self.sigma * self.sigma
    }

    /// γ/σ, which alone fixes the shape of the dual.
    pub fn ratio(&self) -> T {
        self.gamma / self.sigma
    }

    /// Mean −γ/σ² of the latent normal behind the dual.
    pub fn latent_mean(&self) -> T {
        -self.gamma / self.sigma2()
    }

    /// Standard deviation 1/σ of the latent normal behind the dual.
    pub fn latent_sd(&self) -> T {
        T::one() / self.sigma
    }

    pub fn is_centered(&self) -> bool {
        self.mu == T::zero()
    }

    /// Same scales, μ = 0.
    pub fn to_centered(&self) -> Self {
        Self { mu: T::zero(), ..*self }
    }
}

/// Lévy law `location + scale / Z²`.
///
/// `scale` is the squared-scale parameter: Lévy(σ², γ²) has location σ² and
/// scale γ².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevyParams<T> {
    location: T,
    scale: T,
}

impl<T: Scalar> LevyParams<T> {
    pub fn new(location: T, scale: T) -> Result<Self> {
        if !location.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "Levy location must be finite, got {location}"
            )));
        }
        if !(scale > T::zero()) || !scale.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "Levy scale must be positive and finite, got {scale}"
            )));
        }
        Ok(Self { location, scale })
    }

    pub fn location(&self) -> T {
        self.location
    }

    pub fn scale(&self) -> T {
        self.scale
    }
}

/// Parameters of the dual-Voigt mixing law V′ on (0, 1/σ²).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualMixingParams<T> {
    base: VoigtParams<T>,
}

impl<T: Scalar> DualMixingParams<T> {
    pub fn new(base: VoigtParams<T>) -> Self {
        Self { base }
    }

    pub fn base(&self) -> &VoigtParams<T> {
        &self.base
    }

    /// Right end 1/σ² of the support.
    pub fn support_upper(&self) -> T {
        T::one() / self.base.sigma2()
    }

    /// The Lévy(1/σ², γ²/σ⁴) that is truncated and reflected.
    pub fn levy(&self) -> LevyParams<T> {
        let s2 = self.base.sigma2();
        LevyParams {
            location: T::one() / s2,
            scale: self.base.gamma() * self.base.gamma() / (s2 * s2),
        }
    }
}
