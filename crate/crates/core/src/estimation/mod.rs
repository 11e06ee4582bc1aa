//! Dual-Voigt parameter estimation: sufficient statistics, a Nelder–Mead
//! minimizer and the ML / method-of-moments fits.

pub mod fit;
pub mod simplex;
pub mod stats;

pub use fit::{
    back_map, fit, fit_ml, fit_mom, mean_log_likelihood, FitResult, Method, MIN_SAMPLE_SIZE, MOM_RESIDUAL_TOL,
};
pub use simplex::{nelder_mead, SimplexConfig, SimplexOutcome};
pub use stats::{sufficient_stats, SufficientStats};
