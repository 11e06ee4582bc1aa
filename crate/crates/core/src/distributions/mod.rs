//! Parameterized distributions and their samplers.

pub mod cauchy;
pub mod dual;
pub mod levy;
pub mod mixing;
pub mod params;
pub mod rng;
pub mod truncnormal;
pub mod voigt;

pub use cauchy::Cauchy;
pub use dual::{AcceptanceCounter, DualVoigt, PROPOSAL_BUDGET};
pub use levy::Levy;
pub use mixing::DualMixing;
pub use params::{DualMixingParams, LevyParams, VoigtParams};
pub use rng::{derive_seed, RngStream};
pub use truncnormal::TruncNormal;
pub use voigt::{normal_scale_mixture_sample, Voigt};
