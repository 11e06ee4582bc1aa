//! Numerical and distributional identity checks over a parameter grid.

use std::cell::RefCell;
use std::fmt;

use rayon::prelude::*;

use crate::distributions::{
    derive_seed, normal_scale_mixture_sample, AcceptanceCounter, Cauchy, DualMixing, DualVoigt, Levy, RngStream, Voigt,
};
use crate::error::{Error, Result};
use crate::special::{
    integrate, ks_critical_two_sample, ks_two_sample, sorted, std_normal_pdf, std_normal_sf, QuadratureConfig,
};

pub const DUALITY_TOL: f64 = 1e-6;
pub const PEAK_BOUND_SLACK: f64 = 1e-10;
pub const LEVY_TRUNCATION_TOL: f64 = 1e-12;
pub const NORMALIZATION_TOL: f64 = 1e-8;
pub const MOMENT_RECURSION_TOL: f64 = 1e-10;
/// Half-width of the Monte-Carlo agreement bands, in standard errors.
pub const MC_SE_BAND: f64 = 3.0;
/// γ = σ values bracketing the point where the dual peak crosses φ(0).
pub const PEAK_THRESHOLD_BRACKET: (f64, f64) = (0.522, 0.524);

/// The grid {0.25, 0.5, 1, 2, 4}².
pub fn standard_grid() -> Vec<(f64, f64)> {
    let vals = [0.25, 0.5, 1.0, 2.0, 4.0];
    vals.iter().flat_map(|&g| vals.iter().map(move |&s| (g, s))).collect()
}

/// Quadrature settings for evaluating the Voigt density itself.
pub fn pdf_quadrature() -> QuadratureConfig<f64> {
    QuadratureConfig {
        abs_tol: 1e-15,
        rel_tol: 1e-11,
        max_subdivisions: 400,
    }
}

/// Quadrature settings for normalization integrals.
pub fn mass_quadrature() -> QuadratureConfig<f64> {
    QuadratureConfig {
        abs_tol: 1e-11,
        rel_tol: 1e-10,
        max_subdivisions: 400,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Identity {
    /// |2π·p(0)·p′(0) − 1|.
    Duality,
    /// p(0) − 1/(γπ).
    PeakBound,
    /// Dual peak against φ(0) on either side of σ = γ ≈ 0.523.
    PeakThreshold,
    /// |F_L(2/σ²) − 2(1 − Φ(γ/σ))|.
    LevyTruncation,
    VoigtNormalization,
    DualNormalization,
    MixingNormalization,
    /// Closed-form second and fourth dual moments against the recursion.
    MomentRecursion,
    /// Monte-Carlo second and fourth dual moments against the recursion.
    MomentMonteCarlo,
    AcceptanceRateAr,
    AcceptanceRateMixing,
    KsConvMix,
    KsReflectAr,
    KsReflectMixing,
    KsArMixing,
    KsCauchyComposition,
}

impl Identity {
    pub fn name(&self) -> &'static str {
        match self {
            Identity::Duality => "duality",
            Identity::PeakBound => "peak_bound",
            Identity::PeakThreshold => "peak_threshold",
            Identity::LevyTruncation => "levy_truncation",
            Identity::VoigtNormalization => "voigt_normalization",
            Identity::DualNormalization => "dual_normalization",
            Identity::MixingNormalization => "mixing_normalization",
            Identity::MomentRecursion => "moment_recursion",
            Identity::MomentMonteCarlo => "moment_monte_carlo",
            Identity::AcceptanceRateAr => "acceptance_rate_ar",
            Identity::AcceptanceRateMixing => "acceptance_rate_mixing",
            Identity::KsConvMix => "ks_conv_mix",
            Identity::KsReflectAr => "ks_reflect_ar",
            Identity::KsReflectMixing => "ks_reflect_mixing",
            Identity::KsArMixing => "ks_ar_mixing",
            Identity::KsCauchyComposition => "ks_cauchy_composition",
        }
    }

    /// Statistical checks are judged as a family, allowing a few
    /// per-point failures; deterministic ones must pass everywhere.
    pub fn is_statistical(&self) -> bool {
        matches!(
            self,
            Identity::MomentMonteCarlo
                | Identity::AcceptanceRateAr
                | Identity::AcceptanceRateMixing
                | Identity::KsConvMix
                | Identity::KsReflectAr
                | Identity::KsReflectMixing
                | Identity::KsArMixing
                | Identity::KsCauchyComposition
        )
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// The check could not run, e.g. a rejection sampler ran out of budget.
    Infeasible,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Infeasible => "INFEASIBLE",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub identity: Identity,
    pub gamma: f64,
    pub sigma: f64,
    /// Measured discrepancy or statistic; NaN when infeasible.
    pub measured: f64,
    pub threshold: f64,
    pub status: Status,
    pub note: String,
}

impl Check {
    fn bound(identity: Identity, gamma: f64, sigma: f64, measured: f64, threshold: f64) -> Self {
        let status = if measured < threshold {
            Status::Pass
        } else {
            Status::Fail
        };
        Self {
            identity,
            gamma,
            sigma,
            measured,
            threshold,
            status,
            note: String::new(),
        }
    }

    fn infeasible(identity: Identity, gamma: f64, sigma: f64, threshold: f64, err: &Error) -> Self {
        Self {
            identity,
            gamma,
            sigma,
            measured: f64::NAN,
            threshold,
            status: Status::Infeasible,
            note: err.to_string(),
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} gamma={} sigma={} measured={:.6e} threshold={:.6e}",
            self.status, self.identity, self.gamma, self.sigma, self.measured, self.threshold
        )?;
        if !self.note.is_empty() {
            write!(f, " ({})", self.note)?;
        }
        Ok(())
    }
}

/// Verdict for one identity across the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilySummary {
    pub identity: Identity,
    pub points: usize,
    pub failures: usize,
    pub allowed: usize,
}

impl FamilySummary {
    pub fn passed(&self) -> bool {
        self.failures <= self.allowed
    }
}

impl fmt::Display for FamilySummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {}/{} points failed, {} allowed",
            if self.passed() { "PASS" } else { "FAIL" },
            self.identity,
            self.failures,
            self.points,
            self.allowed
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub n: usize,
    pub seed: u64,
    pub checks: Vec<Check>,
}

/// Failures tolerated among `points` independent tests at α = 0.01: at most
/// 5% of the points, rounded down.
pub fn ks_allowance(points: usize) -> usize {
    points / 20
}

impl IdentityReport {
    pub fn checks_for(&self, identity: Identity) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(move |c| c.identity == identity)
    }

    pub fn families(&self) -> Vec<FamilySummary> {
        let mut ids: Vec<Identity> = self.checks.iter().map(|c| c.identity).collect();
        ids.sort();
        ids.dedup();
        ids.into_iter()
            .map(|identity| {
                let points = self.checks_for(identity).count();
                let failures = self.checks_for(identity).filter(|c| c.status != Status::Pass).count();
                let allowed = if identity.is_statistical() {
                    ks_allowance(points)
                } else {
                    0
                };
                FamilySummary {
                    identity,
                    points,
                    failures,
                    allowed,
                }
            })
            .collect()
    }

    pub fn family(&self, identity: Identity) -> Option<FamilySummary> {
        self.families().into_iter().find(|f| f.identity == identity)
    }

    pub fn passed(&self) -> bool {
        self.families().iter().all(FamilySummary::passed)
    }

    /// One line per check followed by one line per identity family.
    pub fn lines(&self) -> Vec<String> {
        self.checks
            .iter()
            .map(ToString::to_string)
            .chain(self.families().iter().map(ToString::to_string))
            .collect()
    }
}

fn integrate_fallible<F: Fn(f64) -> Result<f64>>(f: F, lo: f64, hi: f64, cfg: &QuadratureConfig<f64>) -> Result<f64> {
    let failure = RefCell::new(None);
    let value = integrate(
        |x| match f(x) {
            Ok(v) => v,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        },
        lo,
        hi,
        cfg,
    );
    match failure.into_inner() {
        Some(e) => Err(e),
        None => value,
    }
}

/// ∫ Voigt pdf over the real line.
pub fn voigt_mass(v: &Voigt<f64>) -> Result<f64> {
    let inner = pdf_quadrature();
    let mu = v.params().mu();
    integrate_fallible(
        |u| v.pdf(mu + u, &inner),
        f64::NEG_INFINITY,
        f64::INFINITY,
        &mass_quadrature(),
    )
}

pub fn dual_mass(d: &DualVoigt<f64>) -> Result<f64> {
    integrate(|u| d.pdf(u), f64::NEG_INFINITY, f64::INFINITY, &mass_quadrature())
}

pub fn mixing_mass(m: &DualMixing<f64>) -> Result<f64> {
    integrate(|v| m.pdf(v), 0.0, m.upper(), &mass_quadrature())
}

/// Sorted draws, or the first sampler error.
fn draw<F: FnMut(&mut RngStream) -> Result<f64>>(n: usize, rng: &mut RngStream, mut f: F) -> Result<Vec<f64>> {
    let xs = (0..n).map(|_| f(rng)).collect::<Result<Vec<_>>>()?;
    Ok(sorted(xs))
}

fn ks_check(identity: Identity, g: f64, s: f64, a: &Result<Vec<f64>>, b: &Result<Vec<f64>>) -> Check {
    match (a, b) {
        (Ok(a), Ok(b)) => {
            let crit = ks_critical_two_sample(a.len(), b.len());
            let d = ks_two_sample(a, b).expect("sorted nonempty samples");
            Check::bound(identity, g, s, d, crit)
        }
        (Err(e), _) | (_, Err(e)) => Check::infeasible(identity, g, s, f64::NAN, e),
    }
}

fn rate_check(identity: Identity, g: f64, s: f64, counter: &AcceptanceCounter, outcome: &Result<Vec<f64>>) -> Check {
    let p = 2.0 * std_normal_sf(g / s);
    let se = (p * (1.0 - p) / counter.proposals as f64).sqrt();
    match outcome {
        Ok(_) => Check::bound(identity, g, s, (counter.rate() - p).abs(), MC_SE_BAND * se).with_note(format!(
            "rate={:.6} expected={:.6} proposals={}",
            counter.rate(),
            p,
            counter.proposals
        )),
        Err(e) => Check::infeasible(identity, g, s, MC_SE_BAND * se, e),
    }
}

/// Sample moment of order k against `expected`, in standard errors.
fn moment_z(xs: &[f64], k: i32, expected: f64) -> f64 {
    let n = xs.len() as f64;
    let vals: Vec<f64> = xs.iter().map(|x| x.powi(k)).collect();
    let mean = vals.iter().sum::<f64>() / n;
    let var = vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean - expected).abs() / (var / n).sqrt()
}

fn point_checks(g: f64, s: f64, index: u64, n: usize, seed: u64) -> Result<Vec<Check>> {
    let voigt = Voigt::from_parts(0.0, g, s)?;
    let dual = DualVoigt::from_parts(g, s)?;
    let mixing = DualMixing::from_parts(g, s)?;
    let mut out = Vec::new();

    let p0 = voigt.pdf(0.0, &pdf_quadrature())?;
    let dual0 = dual.pdf(0.0);
    out.push(Check::bound(
        Identity::Duality,
        g,
        s,
        (std::f64::consts::TAU * p0 * dual0 - 1.0).abs(),
        DUALITY_TOL,
    ));
    let bound = 1.0 / (g * std::f64::consts::PI);
    out.push(
        Check::bound(Identity::PeakBound, g, s, p0 - bound, PEAK_BOUND_SLACK)
            .with_note(format!("p(0)={p0:.12} bound={bound:.12}")),
    );
    let levy = Levy::from_params(mixing.params().levy());
    let lhs = levy.cdf(2.0 / (s * s));
    out.push(Check::bound(
        Identity::LevyTruncation,
        g,
        s,
        (lhs - 2.0 * std_normal_sf(g / s)).abs(),
        LEVY_TRUNCATION_TOL,
    ));
    for (identity, mass) in [
        (Identity::VoigtNormalization, voigt_mass(&voigt)?),
        (Identity::DualNormalization, dual_mass(&dual)?),
        (Identity::MixingNormalization, mixing_mass(&mixing)?),
    ] {
        out.push(Check::bound(identity, g, s, (mass - 1.0).abs(), NORMALIZATION_TOL));
    }
    let (m2, m4) = (dual.moment(2)?, dual.moment(4)?);
    // The closed forms subtract nearly equal terms once γ/σ is large, so the
    // gap is measured against the size of those terms.
    let lambda = crate::special::inverse_mills_ratio(g / s);
    let scale2 = g * g / s.powi(4) + 1.0 / (s * s) + g / s.powi(3) * lambda;
    let scale4 = g.powi(4) / s.powi(8)
        + 6.0 * g * g / s.powi(6)
        + 3.0 / s.powi(4)
        + (5.0 * g / s.powi(5) + g.powi(3) / s.powi(7)) * lambda;
    let rec = ((dual.second_moment_closed() - m2).abs() / scale2.max(1.0))
        .max((dual.fourth_moment_closed() - m4).abs() / scale4.max(1.0));
    out.push(Check::bound(Identity::MomentRecursion, g, s, rec, MOMENT_RECURSION_TOL));

    let root = derive_seed(seed, index);
    let mut conv_rng = RngStream::new(root, 0);
    let mut mix_rng = RngStream::new(root, 1);
    let conv = draw(n, &mut conv_rng, |r| Ok(voigt.sample_conv(r)));
    let mix = draw(n, &mut mix_rng, |r| Ok(voigt.sample_mix(r)));
    out.push(ks_check(Identity::KsConvMix, g, s, &conv, &mix));

    let mut reflect_rng = RngStream::new(root, 2);
    let reflect = draw(n, &mut reflect_rng, |r| Ok(dual.sample_reflect(r)));
    let mut ar_counter = AcceptanceCounter::default();
    let mut ar_rng = RngStream::new(root, 3);
    let ar = draw(n, &mut ar_rng, |r| dual.sample_ar_counted(r, &mut ar_counter));
    let mut mix_counter = AcceptanceCounter::default();
    let mut dmix_rng = RngStream::new(root, 4);
    let dmix = draw(n, &mut dmix_rng, |r| mixing.sample_dual_counted(r, &mut mix_counter));
    out.push(ks_check(Identity::KsReflectAr, g, s, &reflect, &ar));
    out.push(ks_check(Identity::KsReflectMixing, g, s, &reflect, &dmix));
    out.push(ks_check(Identity::KsArMixing, g, s, &ar, &dmix));
    out.push(rate_check(Identity::AcceptanceRateAr, g, s, &ar_counter, &ar));
    out.push(rate_check(Identity::AcceptanceRateMixing, g, s, &mix_counter, &dmix));

    if let Ok(xs) = &reflect {
        let z = moment_z(xs, 2, m2).max(moment_z(xs, 4, m4));
        out.push(Check::bound(Identity::MomentMonteCarlo, g, s, z, MC_SE_BAND).with_note("in standard errors"));
    }
    Ok(out)
}

/// KS between √Lévy(0, γ²)·Z draws and Cauchy(γ) draws.
pub fn cauchy_composition_check(gamma: f64, n: usize, seed: u64) -> Result<Check> {
    let cauchy = Cauchy::new(gamma)?;
    let levy = Levy::new(0.0, gamma * gamma)?;
    let root = derive_seed(seed, gamma.to_bits());
    let a = draw(n, &mut RngStream::new(root, 5), |r| {
        Ok(normal_scale_mixture_sample(&levy, r))
    });
    let b = draw(n, &mut RngStream::new(root, 6), |r| Ok(cauchy.sample(r)));
    Ok(ks_check(Identity::KsCauchyComposition, gamma, 0.0, &a, &b))
}

/// Dual peak at γ = σ against φ(0): below at the lower bracket point and
/// above at the upper one.
pub fn peak_threshold_checks() -> Result<Vec<Check>> {
    let phi0 = std_normal_pdf(0.0_f64);
    let (lo, hi) = PEAK_THRESHOLD_BRACKET;
    let below = DualVoigt::from_parts(lo, lo)?.pdf(0.0);
    let above = DualVoigt::from_parts(hi, hi)?.pdf(0.0);
    Ok(vec![
        Check::bound(Identity::PeakThreshold, lo, lo, below - phi0, 0.0).with_note("p'(0) - phi(0), must be < 0"),
        Check::bound(Identity::PeakThreshold, hi, hi, phi0 - above, 0.0).with_note("phi(0) - p'(0), must be < 0"),
    ])
}

/// Runs every identity on each grid point with `n` draws per sampler.
///
/// Grid points run in parallel, each on streams derived from `seed` and
/// its grid index; the report lists checks in grid order.
pub fn run_identity_suite(grid: &[(f64, f64)], n: usize, seed: u64) -> Result<IdentityReport> {
    if grid.is_empty() {
        return Err(Error::InvalidParameter("identity grid is empty".into()));
    }
    if n < 2 {
        return Err(Error::SampleTooSmall { n, min: 2 });
    }
    let per_point: Vec<Vec<Check>> = grid
        .par_iter()
        .enumerate()
        .map(|(i, &(g, s))| point_checks(g, s, i as u64, n, seed))
        .collect::<Result<_>>()?;
    let mut checks: Vec<Check> = per_point.into_iter().flatten().collect();
    let mut gammas: Vec<f64> = grid.iter().map(|p| p.0).collect();
    gammas.sort_by(f64::total_cmp);
    gammas.dedup();
    for g in gammas {
        checks.push(cauchy_composition_check(g, n, seed)?);
    }
    checks.extend(peak_threshold_checks()?);
    Ok(IdentityReport { n, seed, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn allowance() {
        assert_eq!(ks_allowance(25), 1);
        assert_eq!(ks_allowance(3), 0);
        assert_eq!(ks_allowance(40), 2);
    }

    #[test]
    fn single_point_suite_passes() {
        let report = run_identity_suite(&[(1.0, 1.0)], 2000, 3).unwrap();
        for line in report.lines() {
            assert!(!line.starts_with("FAIL") && !line.starts_with("INFEASIBLE"), "{line}");
        }
        assert!(report.passed());
    }

    #[test]
    fn infeasible_sampler_is_reported() {
        let report = run_identity_suite(&[(16.0, 1.0)], 10, 0).unwrap();
        let ar = report.checks_for(Identity::KsReflectAr).next().unwrap();
        assert_eq!(ar.status, Status::Infeasible);
        assert!(!report.passed());
    }
}
