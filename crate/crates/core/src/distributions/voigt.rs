use crate::distributions::cauchy::Cauchy;
use crate::distributions::dual::DualVoigt;
use crate::distributions::levy::Levy;
use crate::distributions::params::{LevyParams, VoigtParams};
use crate::distributions::rng::RngStream;
use crate::error::Result;
use crate::scalar::{c, Scalar};
use crate::special::normal::mills_ratio;
use crate::special::quadrature::{integrate, QuadratureConfig};

/// Envelope level e^{-40} at which the characteristic function is treated
/// as spent when counting oscillations.
const ENVELOPE_LOG_CUTOFF: f64 = 40.0;

/// Cosine-transform evaluation is used while the integrand completes at
/// most this many periods before the envelope is spent.
const MAX_COSINE_PERIODS: f64 = 4.0;

/// The Voigt distribution: Cauchy(γ) + N(0, σ²), shifted by μ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Voigt<T> {
    params: VoigtParams<T>,
}

impl<T: Scalar> Voigt<T> {
    pub fn new(params: VoigtParams<T>) -> Self {
        Self { params }
    }

    pub fn from_parts(mu: T, gamma: T, sigma: T) -> Result<Self> {
        Ok(Self::new(VoigtParams::new(mu, gamma, sigma)?))
    }

    pub fn params(&self) -> &VoigtParams<T> {
        &self.params
    }

    /// The mixing law Lévy(σ², γ²) of the scale-mixture representation.
    pub fn mixing(&self) -> Levy<T> {
        let g = self.params.gamma();
        Levy::from_params(
            LevyParams::new(self.params.sigma2(), g * g).expect("valid Voigt parameters give a valid Levy"),
        )
    }

    /// The dual of the centered version of this law.
    pub fn dual(&self) -> DualVoigt<T> {
        DualVoigt::new(self.params.to_centered()).expect("centered parameters")
    }

    /// Characteristic function of the centered law, e^{−γ|t| − σ²t²/2}.
    pub fn char_fn(&self, t: T) -> T {
        (-self.params.gamma() * t.abs() - self.params.sigma2() * t * t * c(0.5)).exp()
    }

    /// Closed-form density at the mode: R(γ/σ) / (πσ).
    pub fn peak_density(&self) -> T {
        mills_ratio(self.params.ratio()) / (T::PI() * self.params.sigma())
    }

    /// Density at `u`.
    ///
    /// Near the mode this is the inverse cosine transform
    /// (1/π)∫₀^∞ e^{−γt−σ²t²/2} cos(ut) dt. Once that integrand would swing
    /// through more than a few periods the normal-mixture form
    /// 2∫₀^∞ φ(z) N(u; 0, σ² + γ²/z²) dz is used instead, which stays
    /// smooth and non-oscillatory however far out `u` is.
    pub fn pdf(&self, u: T, cfg: &QuadratureConfig<T>) -> Result<T> {
        let x = (u - self.params.mu()).abs();
        let density = if x * self.envelope_extent() <= c::<T>(MAX_COSINE_PERIODS) * T::TAU() {
            self.pdf_cosine(x, cfg)?
        } else {
            self.pdf_mixture(x, cfg)?
        };
        Ok(density.max(T::zero()))
    }

    /// Abscissa where γt + σ²t²/2 reaches the envelope cutoff.
    fn envelope_extent(&self) -> T {
        let g = self.params.gamma();
        let s2 = self.params.sigma2();
        let cut: T = c(ENVELOPE_LOG_CUTOFF);
        (-g + (g * g + c::<T>(2.0) * s2 * cut).sqrt()) / s2
    }

    fn pdf_cosine(&self, x: T, cfg: &QuadratureConfig<T>) -> Result<T> {
        let g = self.params.gamma();
        let s = self.params.sigma();
        let step = T::one() / (g + s);
        let integrand = |tau: T| {
            let t = tau * step;
            (-g * t - s * s * t * t * c(0.5)).exp() * (x * t).cos()
        };
        Ok(integrate(integrand, T::zero(), T::infinity(), cfg)? * step / T::PI())
    }

    fn pdf_mixture(&self, x: T, cfg: &QuadratureConfig<T>) -> Result<T> {
        let g = self.params.gamma();
        let s2 = self.params.sigma2();
        // z = k·w puts the bulk of the integrand at w = O(1)
        let k = if x > g { g / x } else { T::one() };
        let norm = T::TAU().sqrt();
        let integrand = |w: T| {
            let z = k * w;
            let q = s2 * z * z + g * g;
            let phi = (-z * z * c(0.5)).exp() / norm;
            let normal = z / (norm * q.sqrt()) * (-x * x * z * z / (c::<T>(2.0) * q)).exp();
            c::<T>(2.0) * phi * normal
        };
        Ok(integrate(integrand, T::zero(), T::infinity(), cfg)? * k)
    }

    /// μ + X + σZ with X ~ Cauchy(γ).
    pub fn sample_conv(&self, rng: &mut RngStream) -> T {
        let cauchy = Cauchy::new(self.params.gamma()).expect("valid Voigt parameters");
        let x = cauchy.sample(rng);
        let z: T = rng.std_normal();
        (x + self.params.sigma() * z) + self.params.mu()
    }

    /// μ + √L·Z with L ~ Lévy(σ², γ²).
    pub fn sample_mix(&self, rng: &mut RngStream) -> T {
        normal_scale_mixture_sample(&self.mixing(), rng) + self.params.mu()
    }
}

/// √L·Z for L drawn from `mixing` and an independent standard normal Z.
///
/// With `Levy(0, γ²)` this is the σ = 0 limit of the Voigt mixture, a
/// Cauchy(γ) variate.
pub fn normal_scale_mixture_sample<T: Scalar>(mixing: &Levy<T>, rng: &mut RngStream) -> T {
    let variance = mixing.sample(rng);
    let z: T = rng.std_normal();
    variance.sqrt() * z
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tight() -> QuadratureConfig<f64> {
        QuadratureConfig::new(1e-13, 1e-11, 400).unwrap()
    }

    #[test]
    fn mode_matches_closed_form() {
        let v = Voigt::from_parts(0.0_f64, 1.0, 1.0).unwrap();
        let p0 = v.pdf(0.0, &QuadratureConfig::default()).unwrap();
        assert!((p0 - v.peak_density()).abs() < 1e-8);
        assert!((v.peak_density() - 0.208_709_280_5).abs() < 1e-9);
    }

    #[test]
    fn routes_agree_where_both_are_valid() {
        for &(g, s) in &[(1.0_f64, 1.0_f64), (0.25, 4.0), (4.0, 0.25), (0.5, 2.0)] {
            let v = Voigt::from_parts(0.0, g, s).unwrap();
            for &x in &[0.0, 0.3, 1.0, 2.5, 6.0] {
                let a = v.pdf_cosine(x, &tight()).unwrap();
                let b = v.pdf_mixture(x, &tight()).unwrap();
                assert!((a - b).abs() < 1e-10 * a.max(1e-3), "g={g} s={s} x={x}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn symmetric_about_mu() {
        let v = Voigt::from_parts(2.0_f64, 0.7, 1.3).unwrap();
        let cfg = tight();
        for &d in &[0.1, 1.0, 5.0, 50.0] {
            let a = v.pdf(2.0 + d, &cfg).unwrap();
            let b = v.pdf(2.0 - d, &cfg).unwrap();
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn cauchy_limit() {
        let v = Voigt::from_parts(0.0_f64, 1.0, 1e-3).unwrap();
        let p = v.pdf(1.0, &tight()).unwrap();
        let cauchy = 1.0 / (std::f64::consts::PI * 2.0);
        assert!((p - cauchy).abs() / cauchy < 1e-4);
    }

    #[test]
    fn far_tail_follows_cauchy_decay() {
        let v = Voigt::from_parts(0.0_f64, 1.0, 1.0).unwrap();
        for &u in &[1e3_f64, 1e5, 1e8] {
            let p = v.pdf(u, &tight()).unwrap();
            let tail = 1.0 / (std::f64::consts::PI * u * u);
            assert!(
                (p - tail).abs() / tail < (5.0 / (u * u)).max(1e-9),
                "u={u}: {p} vs {tail}"
            );
        }
    }

    #[test]
    fn location_shift_is_exact_for_conv_sampler() {
        let a = Voigt::from_parts(0.0_f64, 1.0, 1.0).unwrap();
        let b = Voigt::from_parts(5.0_f64, 1.0, 1.0).unwrap();
        let mut ra = RngStream::new(3, 1);
        let mut rb = RngStream::new(3, 1);
        for _ in 0..1000 {
            assert_eq!(b.sample_conv(&mut rb), a.sample_conv(&mut ra) + 5.0);
        }
    }

    #[test]
    fn mix_sampler_is_deterministic() {
        let v = Voigt::from_parts(0.0_f64, 1.0, 1.0).unwrap();
        let x = v.sample_mix(&mut RngStream::new(9, 4));
        let y = v.sample_mix(&mut RngStream::new(9, 4));
        assert_eq!(x, y);
    }
}
