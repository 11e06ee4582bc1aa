//! The Voigt distribution and its dual.
//!
//! The Voigt law is the convolution of a Cauchy and a normal; it is also a
//! normal scale mixture whose mixing law is a shifted Lévy. Its dual, whose
//! density is proportional to the Voigt characteristic function, is a
//! reflected truncated normal and is itself a normal scale mixture with a
//! reflected truncated Lévy mixing law.
//!
//! Everything numeric is generic over [`Scalar`] (`f32` or `f64`); the
//! `*64` / `*32` aliases below name the usual instantiations.

// `!(x > 0)` is used on purpose so that NaN is rejected too, and the
// rational-approximation coefficients are kept exactly as published.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod distributions;
pub mod error;
pub mod estimation;
pub mod scalar;
pub mod simulation;
pub mod special;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub use distributions::{
    AcceptanceCounter, Cauchy, DualMixing, DualMixingParams, DualVoigt, Levy, LevyParams, RngStream, TruncNormal,
    Voigt, VoigtParams,
};
pub use estimation::{fit_ml, fit_mom, FitResult, Method, SimplexConfig, SufficientStats};
pub use special::{QuadratureConfig, TruncNormSpec};

pub type Voigt64 = Voigt<f64>;
pub type Voigt32 = Voigt<f32>;
pub type DualVoigt64 = DualVoigt<f64>;
pub type DualVoigt32 = DualVoigt<f32>;
pub type DualMixing64 = DualMixing<f64>;
pub type DualMixing32 = DualMixing<f32>;
pub type Levy64 = Levy<f64>;
pub type Levy32 = Levy<f32>;
pub type Cauchy64 = Cauchy<f64>;
pub type Cauchy32 = Cauchy<f32>;
pub type TruncNormal64 = TruncNormal<f64>;
pub type TruncNormal32 = TruncNormal<f32>;
pub type VoigtParams64 = VoigtParams<f64>;
pub type VoigtParams32 = VoigtParams<f32>;
pub type FitResult64 = FitResult<f64>;
pub type FitResult32 = FitResult<f32>;
pub type QuadratureConfig64 = QuadratureConfig<f64>;
pub type QuadratureConfig32 = QuadratureConfig<f32>;
