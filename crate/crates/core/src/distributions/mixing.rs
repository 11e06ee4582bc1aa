use crate::distributions::dual::{AcceptanceCounter, PROPOSAL_BUDGET};
use crate::distributions::levy::Levy;
use crate::distributions::params::{DualMixingParams, VoigtParams};
use crate::distributions::rng::RngStream;
use crate::distributions::truncnormal::TruncNormal;
use crate::error::{Error, Result};
use crate::scalar::{c, Scalar};
use crate::special::normal::ln_std_normal_sf;
use crate::special::truncnorm::TruncNormSpec;

/// Mixing law of the dual Voigt as a normal scale mixture.
///
/// V′ = 2/σ² − L conditioned on L < 2/σ², with L ~ Lévy(1/σ², γ²/σ⁴).
/// The support is the open interval (0, 1/σ²).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualMixing<T> {
    params: DualMixingParams<T>,
    levy: Levy<T>,
}

impl<T: Scalar> DualMixing<T> {
    pub fn new(params: DualMixingParams<T>) -> Self {
        Self {
            levy: Levy::from_params(params.levy()),
            params,
        }
    }

    pub fn from_parts(gamma: T, sigma: T) -> Result<Self> {
        Ok(Self::new(DualMixingParams::new(VoigtParams::centered(gamma, sigma)?)))
    }

    pub fn params(&self) -> &DualMixingParams<T> {
        &self.params
    }

    pub fn levy(&self) -> &Levy<T> {
        &self.levy
    }

    /// Right end of the support, 1/σ².
    pub fn upper(&self) -> T {
        self.params.support_upper()
    }

    fn reflect_point(&self) -> T {
        c::<T>(2.0) / self.params.base().sigma2()
    }

    /// ln P(L < 2/σ²) = ln 2(1 − Φ(γ/σ)).
    pub fn ln_truncation_mass(&self) -> T {
        c::<T>(2.0).ln() + ln_std_normal_sf(self.params.base().ratio())
    }

    /// Density of V′; zero outside (0, 1/σ²).
    pub fn pdf(&self, v: T) -> T {
        if !(v > T::zero() && v < self.upper()) {
            return T::zero();
        }
        let d = self.upper() - v;
        let scale = self.levy.params().scale();
        let ln = c::<T>(0.5) * (scale / T::TAU()).ln()
            - c::<T>(1.5) * d.ln()
            - scale / (c::<T>(2.0) * d)
            - self.ln_truncation_mass();
        ln.exp()
    }

    /// Maps a Lévy draw to V′, or `None` when it falls outside the
    /// truncation region.
    ///
    /// L ≤ 1/σ² can only come from rounding in the Lévy draw and is
    /// rejected too, so accepted values lie strictly inside the support.
    pub fn from_levy(&self, l: T) -> Option<T> {
        let top = self.reflect_point();
        if l < top && l > self.upper() {
            Some(top - l)
        } else {
            None
        }
    }

    pub fn sample(&self, rng: &mut RngStream) -> Result<T> {
        let mut counter = AcceptanceCounter::default();
        self.sample_counted(rng, &mut counter)
    }

    /// Rejection sampler on the Lévy; accepts with probability
    /// 2(1 − Φ(γ/σ)).
    pub fn sample_counted(&self, rng: &mut RngStream, counter: &mut AcceptanceCounter) -> Result<T> {
        for _ in 0..PROPOSAL_BUDGET {
            counter.proposals += 1;
            if let Some(v) = self.from_levy(self.levy.sample(rng)) {
                counter.accepted += 1;
                return Ok(v);
            }
        }
        Err(Error::ProposalBudgetExceeded {
            budget: PROPOSAL_BUDGET,
        })
    }

    /// Rejection-free draw of V′.
    ///
    /// L < 2/σ² holds exactly when the normal behind L = 1/σ² + γ²/(σ⁴Z²)
    /// satisfies |Z| > γ/σ, so Z is drawn from that tail directly.
    pub fn sample_direct(&self, rng: &mut RngStream) -> T {
        let tail = TruncNormal::new(
            TruncNormSpec::new(T::zero(), T::one(), self.params.base().ratio()).expect("finite positive ratio"),
        );
        loop {
            let z = tail.sample(rng);
            if let Some(v) = self.from_levy(self.levy.from_normal(z)) {
                return v;
            }
        }
    }

    /// √V′·Z, a draw from the dual Voigt.
    pub fn sample_dual(&self, rng: &mut RngStream) -> Result<T> {
        let v = self.sample(rng)?;
        let z: T = rng.std_normal();
        Ok(v.sqrt() * z)
    }

    pub fn sample_dual_counted(&self, rng: &mut RngStream, counter: &mut AcceptanceCounter) -> Result<T> {
        let v = self.sample_counted(rng, counter)?;
        let z: T = rng.std_normal();
        Ok(v.sqrt() * z)
    }
}
