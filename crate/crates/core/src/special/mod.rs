//! Scalar special functions, truncated-normal moments, quadrature and
//! Kolmogorov–Smirnov distances.

pub mod ks;
pub mod normal;
pub mod quadrature;
pub mod truncnorm;

pub use ks::{ks_critical_one_sample, ks_critical_two_sample, ks_one_sample, ks_two_sample, sorted, KS_COEFF_ALPHA_01};
pub use normal::{
    erfc, inverse_mills_ratio, ln_std_normal_sf, mills_ratio, std_normal_cdf, std_normal_pdf, std_normal_sf,
};
pub use quadrature::{integrate, integrate_estimate, Estimate, QuadratureConfig};
pub use truncnorm::{truncnorm_moments, TruncNormSpec, MAX_MOMENT_ORDER};
