use crate::distributions::params::LevyParams;
use crate::distributions::rng::RngStream;
use crate::error::Result;
use crate::scalar::{c, Scalar};
use crate::special::normal::std_normal_sf;

/// The Lévy distribution, a one-sided stable law with index 1/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Levy<T> {
    params: LevyParams<T>,
}

impl<T: Scalar> Levy<T> {
    pub fn new(location: T, scale: T) -> Result<Self> {
        Ok(Self {
            params: LevyParams::new(location, scale)?,
        })
    }

    pub fn from_params(params: LevyParams<T>) -> Self {
        Self { params }
    }

    pub fn params(&self) -> &LevyParams<T> {
        &self.params
    }

    pub fn pdf(&self, x: T) -> T {
        let d = x - self.params.location();
        if !(d > T::zero()) {
            return T::zero();
        }
        let s = self.params.scale();
        (s / T::TAU()).sqrt() * d.powf(c(-1.5)) * (-s / (c::<T>(2.0) * d)).exp()
    }

    /// erfc(√(scale / 2(x − location))), written as 2(1 − Φ(√(scale/(x − location)))).
    pub fn cdf(&self, x: T) -> T {
        let d = x - self.params.location();
        if !(d > T::zero()) {
            return T::zero();
        }
        if d == T::infinity() {
            return T::one();
        }
        c::<T>(2.0) * std_normal_sf((self.params.scale() / d).sqrt())
    }

    /// `location + scale / z²` for a given nonzero normal draw.
    #[inline]
    pub fn from_normal(&self, z: T) -> T {
        self.params.location() + self.params.scale() / (z * z)
    }

    /// One draw; a normal draw of exactly zero is discarded and redrawn.
    pub fn sample(&self, rng: &mut RngStream) -> T {
        loop {
            let z: T = rng.std_normal();
            if z != T::zero() {
                return self.from_normal(z);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substitution() {
        assert_eq!(Levy::new(0.0_f64, 1.0).unwrap().from_normal(1.0), 1.0);
        assert_eq!(Levy::new(1.0_f64, 4.0).unwrap().from_normal(2.0), 2.0);
    }

    #[test]
    fn cdf_limits() {
        let l = Levy::new(1.0_f64, 2.0).unwrap();
        assert_eq!(l.cdf(1.0), 0.0);
        assert_eq!(l.cdf(0.5), 0.0);
        assert_eq!(l.cdf(f64::INFINITY), 1.0);
        assert!((l.cdf(1e30) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn truncation_mass_at_twice_location() {
        // Levy(1/σ², γ²/σ⁴) at 2/σ² with γ = σ = 1
        let l = Levy::new(1.0_f64, 1.0).unwrap();
        assert!((l.cdf(2.0) - 0.317_310_507_862_914).abs() < 1e-12);
    }

    #[test]
    fn samples_exceed_location() {
        let l = Levy::new(3.0_f64, 0.5).unwrap();
        let mut rng = RngStream::new(1, 0);
        assert!((0..1000).all(|_| l.sample(&mut rng) > 3.0));
    }
}
