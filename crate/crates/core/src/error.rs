use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("quadrature did not converge after {subdivisions} subdivisions (estimated error {abs_error:e})")]
    NonConvergence { subdivisions: usize, abs_error: f64 },

    #[error("sample is empty")]
    EmptySample,

    #[error("sample must be sorted in nondecreasing order")]
    UnsortedSample,

    #[error("moment order {order} exceeds the supported maximum of {max}")]
    OrderTooHigh { order: usize, max: usize },

    #[error("the dual density is defined only for the centered Voigt (mu = {mu})")]
    CenteredOnly { mu: f64 },

    #[error("rejection sampler exceeded {budget} consecutive rejections")]
    ProposalBudgetExceeded { budget: u64 },

    #[error("objective returned non-finite values at every probe")]
    NonFinite,

    #[error("optimizer did not converge within {iterations} iterations")]
    OptimizerFailed { iterations: usize },

    #[error("sample is degenerate: {0}")]
    DegenerateSample(String),

    #[error("sample has {n} observations, at least {min} required")]
    SampleTooSmall { n: usize, min: usize },

    #[error("latent variance must be positive, got {0}")]
    NonPositiveVariance(f64),

    #[error("grid has {points} points, at least {min} required")]
    GridTooCoarse { points: usize, min: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
