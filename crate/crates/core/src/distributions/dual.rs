use crate::distributions::params::VoigtParams;
use crate::distributions::rng::RngStream;
use crate::distributions::truncnormal::TruncNormal;
use crate::error::{Error, Result};
use crate::scalar::{c, Scalar};
use crate::special::normal::{inverse_mills_ratio, mills_ratio, std_normal_sf};
use crate::special::truncnorm::{truncnorm_moments, TruncNormSpec};

/// Consecutive rejections after which a rejection sampler gives up.
pub const PROPOSAL_BUDGET: u64 = 1_000_000;

/// Running tally of proposals and acceptances for a rejection sampler.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct AcceptanceCounter {
    pub proposals: u64,
    pub accepted: u64,
}

impl AcceptanceCounter {
    pub fn rate(&self) -> f64 {
        if self.proposals == 0 {
            return f64::NAN;
        }
        self.accepted as f64 / self.proposals as f64
    }

    pub fn merge(&mut self, other: &AcceptanceCounter) {
        self.proposals += other.proposals;
        self.accepted += other.accepted;
    }
}

/// The dual of the centered Voigt law.
///
/// Its density is proportional to the Voigt characteristic function:
///
/// `p′(u) = σ / (2R(γ/σ)) · e^{−γ|u| − σ²u²/2}`
///
/// where R is the Mills ratio. Equivalently |U′| is N(−γ/σ², 1/σ²)
/// truncated to (0, ∞) and the sign is a fair coin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualVoigt<T> {
    params: VoigtParams<T>,
}

impl<T: Scalar> DualVoigt<T> {
    /// Fails with [`Error::CenteredOnly`] unless μ = 0.
    pub fn new(params: VoigtParams<T>) -> Result<Self> {
        if !params.is_centered() {
            return Err(Error::CenteredOnly {
                mu: params.mu().to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self { params })
    }

    pub fn from_parts(gamma: T, sigma: T) -> Result<Self> {
        Self::new(VoigtParams::centered(gamma, sigma)?)
    }

    pub fn params(&self) -> &VoigtParams<T> {
        &self.params
    }

    /// Law of |U′|: N(−γ/σ², 1/σ²) truncated to (0, ∞).
    pub fn magnitude(&self) -> TruncNormal<T> {
        TruncNormal::new(self.magnitude_spec())
    }

    pub fn magnitude_spec(&self) -> TruncNormSpec<T> {
        TruncNormSpec::positive_part(self.params.latent_mean(), self.params.latent_sd())
            .expect("valid Voigt parameters give a valid truncated normal")
    }

    /// Density at the mode, σ / (2R(γ/σ)).
    pub fn peak(&self) -> T {
        self.params.sigma() / (c::<T>(2.0) * mills_ratio(self.params.ratio()))
    }

    pub fn pdf(&self, u: T) -> T {
        self.peak() * self.shape(u)
    }

    /// ln p′(u) = ln p′(0) − γ|u| − σ²u²/2.
    pub fn ln_pdf(&self, u: T) -> T {
        self.peak().ln() - self.exponent(u)
    }

    /// p′(u)/p′(0), the Voigt characteristic function.
    pub fn shape(&self, u: T) -> T {
        (-self.exponent(u)).exp()
    }

    fn exponent(&self, u: T) -> T {
        self.params.gamma() * u.abs() + self.params.sigma2() * u * u * c(0.5)
    }

    /// Probability 2(1 − Φ(γ/σ)) that one accept-reject proposal is kept.
    pub fn ar_acceptance_probability(&self) -> T {
        c::<T>(2.0) * std_normal_sf(self.params.ratio())
    }

    /// Truncated-normal magnitude with a fair random sign.
    pub fn sample_reflect(&self, rng: &mut RngStream) -> T {
        let magnitude = self.magnitude().sample(rng);
        if rng.coin() {
            magnitude
        } else {
            -magnitude
        }
    }

    /// One accept-reject step for a proposal `candidate` drawn from
    /// N(−γ/σ², 1/σ²): kept as is when positive, shifted by 2γ/σ² when at or
    /// below −2γ/σ², rejected otherwise.
    pub fn ar_step(&self, candidate: T) -> Option<T> {
        let shift = c::<T>(2.0) * self.params.gamma() / self.params.sigma2();
        if candidate > T::zero() {
            Some(candidate)
        } else if candidate <= -shift {
            Some(candidate + shift)
        } else {
            None
        }
    }

    /// Accept-reject sampler built on the normal tails.
    ///
    /// Both tails are accepted, so a proposal survives with probability
    /// 2(1 − Φ(γ/σ)), not 1 − Φ(γ/σ). The sampler becomes impractical as
    /// γ/σ grows and fails with [`Error::ProposalBudgetExceeded`] after
    /// [`PROPOSAL_BUDGET`] consecutive rejections.
    pub fn sample_ar(&self, rng: &mut RngStream) -> Result<T> {
        let mut counter = AcceptanceCounter::default();
        self.sample_ar_counted(rng, &mut counter)
    }

    pub fn sample_ar_counted(&self, rng: &mut RngStream, counter: &mut AcceptanceCounter) -> Result<T> {
        let mean = self.params.latent_mean();
        let sd = self.params.latent_sd();
        for _ in 0..PROPOSAL_BUDGET {
            let z: T = rng.std_normal();
            counter.proposals += 1;
            if let Some(x) = self.ar_step(mean + sd * z) {
                counter.accepted += 1;
                return Ok(x);
            }
        }
        Err(Error::ProposalBudgetExceeded {
            budget: PROPOSAL_BUDGET,
        })
    }

    /// Raw moment E[U′ⁿ]: zero for odd n, the truncated-normal moment of
    /// |U′| for even n.
    pub fn moment(&self, n: usize) -> Result<T> {
        let even = truncnorm_moments(&self.magnitude_spec(), n)?;
        Ok(if n % 2 == 1 { T::zero() } else { even })
    }

    /// E[U′²] = γ²/σ⁴ + 1/σ² − (γ/σ³)·φ(γ/σ)/(1 − Φ(γ/σ)).
    pub fn second_moment_closed(&self) -> T {
        let g = self.params.gamma();
        let s = self.params.sigma();
        let lambda = inverse_mills_ratio(self.params.ratio());
        g * g / s.powi(4) + T::one() / (s * s) - g / s.powi(3) * lambda
    }

    /// E[U′⁴] = γ⁴/σ⁸ + 6γ²/σ⁶ + 3/σ⁴ − (5γ/σ⁵ + γ³/σ⁷)·φ(γ/σ)/(1 − Φ(γ/σ)).
    pub fn fourth_moment_closed(&self) -> T {
        let g = self.params.gamma();
        let s = self.params.sigma();
        let lambda = inverse_mills_ratio(self.params.ratio());
        g.powi(4) / s.powi(8) + c::<T>(6.0) * g * g / s.powi(6) + c::<T>(3.0) / s.powi(4)
            - (c::<T>(5.0) * g / s.powi(5) + g.powi(3) / s.powi(7)) * lambda
    }

    pub fn variance(&self) -> T {
        self.second_moment_closed()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> DualVoigt<f64> {
        DualVoigt::from_parts(1.0, 1.0).unwrap()
    }

    #[test]
    fn requires_centered() {
        let p = VoigtParams::new(0.5_f64, 1.0, 1.0).unwrap();
        assert_eq!(DualVoigt::new(p), Err(Error::CenteredOnly { mu: 0.5 }));
    }

    #[test]
    fn peak_at_unit_parameters() {
        assert!((unit().pdf(0.0) - 0.762_567_638_1).abs() < 1e-9);
    }

    #[test]
    fn ar_branches() {
        let d = unit();
        assert_eq!(d.ar_step(0.7), Some(0.7));
        assert_eq!(d.ar_step(-2.5), Some(-0.5));
        assert_eq!(d.ar_step(-2.0), Some(0.0));
        assert_eq!(d.ar_step(-1.0), None);
        assert_eq!(d.ar_step(0.0), None);
    }

    #[test]
    fn odd_moments_vanish() {
        let d = unit();
        for n in [1, 3, 5, 7] {
            assert_eq!(d.moment(n).unwrap(), 0.0);
        }
        assert!(matches!(d.moment(9), Err(Error::OrderTooHigh { .. })));
    }

    #[test]
    fn closed_forms_match_recursion() {
        for &(g, s) in &[(1.0_f64, 1.0_f64), (2.0, 0.5), (0.25, 4.0), (3.0, 1.7)] {
            let d = DualVoigt::from_parts(g, s).unwrap();
            let m2 = d.moment(2).unwrap();
            let m4 = d.moment(4).unwrap();
            assert!((d.second_moment_closed() - m2).abs() < 1e-10 * m2.max(1.0));
            assert!((d.fourth_moment_closed() - m4).abs() < 1e-10 * m4.max(1.0));
        }
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let d = DualVoigt::from_parts(16.0_f64, 1.0).unwrap();
        let mut counter = AcceptanceCounter::default();
        let r = d.sample_ar_counted(&mut RngStream::new(0, 0), &mut counter);
        assert_eq!(
            r,
            Err(Error::ProposalBudgetExceeded {
                budget: PROPOSAL_BUDGET
            })
        );
        assert_eq!(counter.proposals, PROPOSAL_BUDGET);
        assert_eq!(counter.accepted, 0);
    }
}
