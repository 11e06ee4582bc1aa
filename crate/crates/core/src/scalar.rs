//! Floating-point abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};
use rand::distr::{Distribution, Open01};
use rand::Rng;
use rand_distr::StandardNormal;

/// A real scalar: `f32` or `f64`.
///
/// Accuracy targets quoted in the docs (1e-14 on the normal cdf and so on)
/// are for `f64`; the `f32` instantiation gets whatever single precision
/// allows.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal into this scalar type.
    fn of(x: f64) -> Self;

    /// One standard-normal variate.
    fn std_normal<R: Rng + ?Sized>(rng: &mut R) -> Self;

    /// One uniform variate on the open interval (0, 1).
    fn open01<R: Rng + ?Sized>(rng: &mut R) -> Self;
}

macro_rules! impl_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            #[inline]
            fn of(x: f64) -> Self {
                x as $t
            }

            #[inline]
            fn std_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
                StandardNormal.sample(rng)
            }

            #[inline]
            fn open01<R: Rng + ?Sized>(rng: &mut R) -> Self {
                Open01.sample(rng)
            }
        }
    };
}

impl_scalar!(f32);
impl_scalar!(f64);

/// Shorthand for [`Scalar::of`].
#[inline]
pub(crate) fn c<T: Scalar>(x: f64) -> T {
    T::of(x)
}
