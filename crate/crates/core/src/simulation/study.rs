//! Replicated estimation studies.

use rayon::prelude::*;

use crate::distributions::{derive_seed, DualVoigt, RngStream};
use crate::error::{Error, Result};
use crate::estimation::{fit, FitResult, Method, SimplexConfig, MIN_SAMPLE_SIZE};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct StudyConfig<T> {
    pub true_gamma: T,
    pub true_sigma: T,
    pub sample_sizes: Vec<usize>,
    pub replicates: usize,
    pub seed: u64,
    pub methods: Vec<Method>,
    pub simplex: SimplexConfig<T>,
}

impl<T: Scalar> StudyConfig<T> {
    /// γ = σ = 1, n ∈ {100, 500, 1000, 5000}, 100 replicates, both methods.
    pub fn table1(seed: u64) -> Self {
        Self {
            true_gamma: T::one(),
            true_sigma: T::one(),
            sample_sizes: vec![100, 500, 1000, 5000],
            replicates: 100,
            seed,
            methods: Method::ALL.to_vec(),
            simplex: SimplexConfig::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.replicates == 0 {
            return Err(Error::InvalidParameter("replicates must be at least 1".into()));
        }
        if let Some(&n) = self.sample_sizes.iter().find(|&&n| n < MIN_SAMPLE_SIZE) {
            return Err(Error::SampleTooSmall {
                n,
                min: MIN_SAMPLE_SIZE,
            });
        }
        if self.methods.is_empty() || self.sample_sizes.is_empty() {
            return Err(Error::InvalidParameter(
                "need at least one sample size and one method".into(),
            ));
        }
        self.simplex.validate()?;
        DualVoigt::from_parts(self.true_gamma, self.true_sigma).map(|_| ())
    }
}

/// Aggregates over the converged fits of one (n, method) cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimRow {
    pub n: usize,
    pub method: Method,
    pub mean_gamma_hat: f64,
    pub mean_sigma_hat: f64,
    pub sd_gamma_hat: f64,
    pub sd_sigma_hat: f64,
    pub mae_gamma: f64,
    pub mae_sigma: f64,
    pub n_converged: usize,
    /// Fits that errored or came back unconverged; excluded from the means.
    pub n_failed: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimTable {
    pub true_gamma: f64,
    pub true_sigma: f64,
    pub replicates: usize,
    pub rows: Vec<SimRow>,
}

impl SimTable {
    pub fn row(&self, n: usize, method: Method) -> Option<&SimRow> {
        self.rows.iter().find(|r| r.n == n && r.method == method)
    }

    pub const CSV_HEADER: [&'static str; 10] = [
        "n",
        "method",
        "mean_gamma_hat",
        "mean_sigma_hat",
        "sd_gamma_hat",
        "sd_sigma_hat",
        "mae_gamma",
        "mae_sigma",
        "n_converged",
        "n_failed",
    ];

    pub fn csv_records(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| {
                vec![
                    r.n.to_string(),
                    r.method.to_string(),
                    super::csv::fmt_f64(r.mean_gamma_hat),
                    super::csv::fmt_f64(r.mean_sigma_hat),
                    super::csv::fmt_f64(r.sd_gamma_hat),
                    super::csv::fmt_f64(r.sd_sigma_hat),
                    super::csv::fmt_f64(r.mae_gamma),
                    super::csv::fmt_f64(r.mae_sigma),
                    r.n_converged.to_string(),
                    r.n_failed.to_string(),
                ]
            })
            .collect()
    }
}

fn mean_sd(xs: &[f64]) -> (f64, f64) {
    if xs.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, f64::NAN);
    }
    let ss = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>();
    (mean, (ss / (n - 1.0)).sqrt())
}

/// Builds a row from per-replicate fit outcomes.
pub fn summarize_fits<T: Scalar>(
    n: usize,
    method: Method,
    true_gamma: T,
    true_sigma: T,
    fits: &[Result<FitResult<T>>],
) -> SimRow {
    let ok: Vec<(f64, f64)> = fits
        .iter()
        .filter_map(|f| f.as_ref().ok())
        .filter(|f| f.converged)
        .map(|f| (f.gamma_hat.to_f64().unwrap(), f.sigma_hat.to_f64().unwrap()))
        .collect();
    let gammas: Vec<f64> = ok.iter().map(|p| p.0).collect();
    let sigmas: Vec<f64> = ok.iter().map(|p| p.1).collect();
    let (mean_gamma_hat, sd_gamma_hat) = mean_sd(&gammas);
    let (mean_sigma_hat, sd_sigma_hat) = mean_sd(&sigmas);
    let g0 = true_gamma.to_f64().unwrap();
    let s0 = true_sigma.to_f64().unwrap();
    let mae = |xs: &[f64], truth: f64| mean_sd(&xs.iter().map(|x| (x - truth).abs()).collect::<Vec<_>>()).0;
    SimRow {
        n,
        method,
        mean_gamma_hat,
        mean_sigma_hat,
        sd_gamma_hat,
        sd_sigma_hat,
        mae_gamma: mae(&gammas, g0),
        mae_sigma: mae(&sigmas, s0),
        n_converged: ok.len(),
        n_failed: fits.len() - ok.len(),
    }
}

/// Draws `n` dual-Voigt values with the reflection sampler.
pub fn dual_sample<T: Scalar>(dual: &DualVoigt<T>, n: usize, rng: &mut RngStream) -> Vec<T> {
    (0..n).map(|_| dual.sample_reflect(rng)).collect()
}

/// Replicated fits of the dual Voigt at each sample size.
///
/// Replicate r at size n draws from `RngStream::new(derive_seed(seed, n), r)`
/// and every method fits the same data, so the result is a pure function
/// of the configuration whatever the thread count.
pub fn run_study<T: Scalar>(cfg: &StudyConfig<T>) -> Result<SimTable> {
    cfg.validate()?;
    let dual = DualVoigt::from_parts(cfg.true_gamma, cfg.true_sigma)?;
    let mut sizes = cfg.sample_sizes.clone();
    sizes.sort_unstable();
    sizes.dedup();
    let mut methods = cfg.methods.clone();
    methods.sort();
    methods.dedup();

    let mut rows = Vec::new();
    for &n in &sizes {
        let seed = derive_seed(cfg.seed, n as u64);
        let per_rep: Vec<Vec<Result<FitResult<T>>>> = (0..cfg.replicates as u64)
            .into_par_iter()
            .map(|r| {
                let mut rng = RngStream::new(seed, r);
                let sample = dual_sample(&dual, n, &mut rng);
                methods.iter().map(|&m| fit(&sample, m, &cfg.simplex)).collect()
            })
            .collect();
        for (k, &method) in methods.iter().enumerate() {
            let fits: Vec<_> = per_rep.iter().map(|v| v[k].clone()).collect();
            rows.push(summarize_fits(n, method, cfg.true_gamma, cfg.true_sigma, &fits));
        }
    }
    Ok(SimTable {
        true_gamma: cfg.true_gamma.to_f64().unwrap(),
        true_sigma: cfg.true_sigma.to_f64().unwrap(),
        replicates: cfg.replicates,
        rows,
    })
}

/// One parameter pair of a consistency sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub gamma: f64,
    pub sigma: f64,
    pub rows: Vec<SimRow>,
}

impl SweepPoint {
    /// Whether the mean absolute errors of γ̂ and σ̂ fall strictly as n
    /// grows, for the given method.
    pub fn mae_decreasing(&self, method: Method) -> bool {
        let rows: Vec<&SimRow> = self.rows.iter().filter(|r| r.method == method).collect();
        rows.windows(2)
            .all(|w| w[1].mae_gamma < w[0].mae_gamma && w[1].mae_sigma < w[0].mae_sigma)
    }
}

/// `count` pairs (γ, σ) drawn uniformly from `[lo, hi]²`.
pub fn random_pairs(count: usize, lo: f64, hi: f64, seed: u64) -> Vec<(f64, f64)> {
    let mut rng = RngStream::new(seed, u64::MAX);
    (0..count)
        .map(|_| {
            let g = lo + (hi - lo) * rng.uniform::<f64>();
            let s = lo + (hi - lo) * rng.uniform::<f64>();
            (g, s)
        })
        .collect()
}

/// Estimation error against sample size for several parameter pairs.
///
/// Replicate r of pair k draws one sample of the largest size from
/// `RngStream::new(derive_seed(seed, k), r)` and the smaller sizes fit its
/// leading prefixes. Sharing the draws across sizes makes the comparison
/// between sizes far less noisy than independent samples would.
pub fn run_sweep<T: Scalar>(
    pairs: &[(T, T)],
    sample_sizes: &[usize],
    replicates: usize,
    seed: u64,
    simplex: &SimplexConfig<T>,
) -> Result<Vec<SweepPoint>> {
    let mut sizes = sample_sizes.to_vec();
    sizes.sort_unstable();
    sizes.dedup();
    let n_max = *sizes
        .last()
        .ok_or_else(|| Error::InvalidParameter("no sample sizes".into()))?;
    if sizes[0] < MIN_SAMPLE_SIZE {
        return Err(Error::SampleTooSmall {
            n: sizes[0],
            min: MIN_SAMPLE_SIZE,
        });
    }
    if replicates == 0 {
        return Err(Error::InvalidParameter("replicates must be at least 1".into()));
    }
    let methods = Method::ALL;
    pairs
        .iter()
        .enumerate()
        .map(|(k, &(g, s))| {
            let dual = DualVoigt::from_parts(g, s)?;
            let stream_seed = derive_seed(seed, k as u64);
            let per_rep: Vec<Vec<Result<FitResult<T>>>> = (0..replicates as u64)
                .into_par_iter()
                .map(|r| {
                    let mut rng = RngStream::new(stream_seed, r);
                    let sample = dual_sample(&dual, n_max, &mut rng);
                    sizes
                        .iter()
                        .flat_map(|&n| methods.iter().map(move |&m| (n, m)))
                        .map(|(n, m)| fit(&sample[..n], m, simplex))
                        .collect()
                })
                .collect();
            let mut rows = Vec::new();
            let mut col = 0;
            for &n in &sizes {
                for &m in &methods {
                    let fits: Vec<_> = per_rep.iter().map(|v| v[col].clone()).collect();
                    rows.push(summarize_fits(n, m, g, s, &fits));
                    col += 1;
                }
            }
            Ok(SweepPoint {
                gamma: g.to_f64().unwrap(),
                sigma: s.to_f64().unwrap(),
                rows,
            })
        })
        .collect()
}

/// Sample mean and (n − 1) standard deviation.
pub fn mean_and_sd(xs: &[f64]) -> (f64, f64) {
    mean_sd(xs)
}
