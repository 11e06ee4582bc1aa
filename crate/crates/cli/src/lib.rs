//! Command-line front end for the `dualvoigt` library.
//!
//! Exit codes: 0 on success, 1 on usage or input errors, 2 on numerical
//! failure (including a failed `verify`). Failures print a single line
//! `error kind=<Kind> message="<text>"` on stderr.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use dualvoigt::distributions::{Cauchy, DualMixing, DualVoigt, Levy, RngStream, Voigt};
use dualvoigt::estimation::{fit, Method, SimplexConfig};
use dualvoigt::simulation::{
    figure_data, fmt_f64, run_identity_suite, run_study, standard_grid, write_csv, FigureKind, FigureParams, GridSpec,
    SimTable, StudyConfig,
};
use dualvoigt::QuadratureConfig;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("line {line}: cannot parse '{text}' as a number")]
    Parse { line: usize, text: String },

    #[error("input contains no values")]
    EmptyFile,

    #[error("{0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },

    #[error(transparent)]
    Numeric(#[from] dualvoigt::Error),

    #[error("{failed} identity checks failed")]
    VerifyFailed { failed: usize },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::EmptyFile | CliError::Usage(_) | CliError::Io { .. } => 1,
            CliError::Numeric(e) => match e {
                dualvoigt::Error::InvalidParameter(_)
                | dualvoigt::Error::CenteredOnly { .. }
                | dualvoigt::Error::GridTooCoarse { .. }
                | dualvoigt::Error::SampleTooSmall { .. } => 1,
                _ => 2,
            },
            CliError::VerifyFailed { .. } => 2,
        }
    }

    pub fn kind(&self) -> String {
        match self {
            CliError::Parse { .. } => "ParseError".into(),
            CliError::EmptyFile => "EmptyFile".into(),
            CliError::Usage(_) => "Usage".into(),
            CliError::Io { .. } => "Io".into(),
            CliError::Numeric(e) => format!("{e:?}")
                .split(|c: char| !c.is_alphanumeric())
                .next()
                .unwrap_or("Numeric")
                .to_string(),
            CliError::VerifyFailed { .. } => "VerifyFailed".into(),
        }
    }

    /// The one-line diagnostic written to stderr.
    pub fn diagnostic(&self) -> String {
        let msg = self.to_string().replace('\\', "\\\\").replace('"', "\\\"");
        format!("error kind={} message=\"{}\"", self.kind(), msg.replace('\n', " "))
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

type Draw = Box<dyn FnMut(&mut RngStream) -> dualvoigt::Result<f64>>;

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

/// Reads one number per line. A non-numeric first line followed by data is
/// taken as a header; blank lines are skipped.
pub fn read_sample<R: BufRead>(reader: R) -> CliResult<Vec<f64>> {
    let mut values = Vec::new();
    let mut header: Option<(usize, String)> = None;
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|source| CliError::Io {
            path: "<input>".into(),
            source,
        })?;
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        match text.parse::<f64>() {
            Ok(v) => values.push(v),
            Err(_) if values.is_empty() && header.is_none() => header = Some((i + 1, text.to_string())),
            Err(_) => {
                return Err(CliError::Parse {
                    line: i + 1,
                    text: text.to_string(),
                })
            }
        }
    }
    if values.is_empty() {
        return Err(match header {
            Some((line, text)) => CliError::Parse { line, text },
            None => CliError::EmptyFile,
        });
    }
    Ok(values)
}

pub fn read_sample_csv(path: &Path) -> CliResult<Vec<f64>> {
    let file = File::open(path).map_err(io_err(path))?;
    read_sample(BufReader::new(file))
}

fn positive(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(format!("must be a finite positive number, got {s}"))
    }
}

fn finite(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("must be finite, got {s}"))
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "dualvoigt",
    version,
    about = "Voigt and dual Voigt densities, samplers and estimators"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a density at one point or on a grid.
    Pdf(PdfArgs),
    /// Draw a sample, one value per line.
    Sample(SampleArgs),
    /// Fit the dual Voigt to a sample file.
    Fit(FitArgs),
    /// Replicated estimation study at γ = σ = 1 by default.
    Table1(Table1Args),
    /// Run the identity suite; exits 2 if any check fails.
    Verify(VerifyArgs),
    /// Tabulate figure curves.
    Figures(FiguresArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Dist {
    Voigt,
    DualVoigt,
    /// Law of V′, the dual mixing variable.
    DualMixing,
    /// Lévy(σ², γ²), the Voigt mixing variable.
    VoigtMixing,
    Cauchy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Sampler {
    /// Cauchy plus normal (voigt).
    Conv,
    /// Normal scale mixture over Lévy(σ², γ²) (voigt).
    Mix,
    /// Truncated-normal magnitude with a random sign (dual-voigt).
    Reflect,
    /// Accept-reject on N(−γ/σ², 1/σ²) (dual-voigt).
    Ar,
    /// √V′·Z with V′ from the truncated Lévy (dual-voigt).
    Mixture,
    /// Rejection on the Lévy (dual-mixing).
    Reject,
    /// Rejection-free tail draw (dual-mixing).
    Direct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Ml,
    Mom,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Ml => Method::Ml,
            MethodArg::Mom => Method::Mom,
        }
    }
}

#[derive(Debug, Args)]
pub struct LawArgs {
    #[arg(long, default_value_t = 0.0, value_parser = finite, allow_hyphen_values = true)]
    pub mu: f64,
    #[arg(long, value_parser = positive, allow_hyphen_values = true)]
    pub gamma: f64,
    #[arg(long, value_parser = positive, allow_hyphen_values = true)]
    pub sigma: f64,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    #[arg(long, value_parser = finite, allow_hyphen_values = true)]
    pub grid_from: Option<f64>,
    #[arg(long, value_parser = finite, allow_hyphen_values = true)]
    pub grid_to: Option<f64>,
    #[arg(long)]
    pub grid_points: Option<usize>,
}

#[derive(Debug, Args)]
pub struct OutputArg {
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PdfArgs {
    #[arg(long, value_enum, default_value = "voigt")]
    pub dist: Dist,
    #[command(flatten)]
    pub law: LawArgs,
    /// Single evaluation point; prints the bare value.
    #[arg(long, value_parser = finite, allow_hyphen_values = true, conflicts_with_all = ["grid_from", "grid_to", "grid_points"])]
    pub at: Option<f64>,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub out: OutputArg,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long, value_enum, default_value = "voigt")]
    pub dist: Dist,
    #[command(flatten)]
    pub law: LawArgs,
    /// Defaults to conv, reflect or reject depending on --dist.
    #[arg(long, value_enum)]
    pub sampler: Option<Sampler>,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub out: OutputArg,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "ml")]
    pub method: MethodArg,
    #[command(flatten)]
    pub out: OutputArg,
}

#[derive(Debug, Args)]
pub struct Table1Args {
    #[arg(long, default_value_t = 1.0, value_parser = positive)]
    pub gamma: f64,
    #[arg(long, default_value_t = 1.0, value_parser = positive)]
    pub sigma: f64,
    /// Sample sizes; defaults to 100, 500, 1000, 5000.
    #[arg(long, value_delimiter = ',')]
    pub n: Vec<usize>,
    #[arg(long, default_value_t = 100)]
    pub replicates: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub out: OutputArg,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Draws per sampler at each grid point.
    #[arg(long, default_value_t = 10_000)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub out: OutputArg,
}

#[derive(Debug, Args)]
pub struct FiguresArgs {
    #[arg(long)]
    pub which: FigureKind,
    /// Comma-separated γ values; defaults depend on the figure.
    #[arg(long, value_delimiter = ',', value_parser = positive)]
    pub gamma: Vec<f64>,
    #[arg(long, value_parser = positive)]
    pub sigma: Option<f64>,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub out: OutputArg,
}

fn open_output(out: &OutputArg) -> CliResult<Box<dyn Write>> {
    Ok(match &out.output {
        Some(path) => Box::new(BufWriter::new(File::create(path).map_err(io_err(path))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_table(out: &OutputArg, header: &[String], rows: &[Vec<String>]) -> CliResult<()> {
    let mut w = open_output(out)?;
    let path = out.output.clone().unwrap_or_else(|| "<stdout>".into());
    write_csv(&mut w, header, rows).map_err(io_err(&path))?;
    w.flush().map_err(io_err(&path))
}

fn grid_spec(args: &GridArgs, default: GridSpec) -> GridSpec {
    GridSpec::new(
        args.grid_from.unwrap_or(default.from),
        args.grid_to.unwrap_or(default.to),
        args.grid_points.unwrap_or(default.points),
    )
}

fn require_centered(dist: Dist, mu: f64) -> CliResult<()> {
    if mu != 0.0
        && matches!(
            dist,
            Dist::DualVoigt | Dist::DualMixing | Dist::VoigtMixing | Dist::Cauchy
        )
    {
        return Err(CliError::Numeric(dualvoigt::Error::CenteredOnly { mu }));
    }
    Ok(())
}

fn density(dist: Dist, law: &LawArgs) -> CliResult<Box<dyn Fn(f64) -> dualvoigt::Result<f64>>> {
    require_centered(dist, law.mu)?;
    let (g, s) = (law.gamma, law.sigma);
    Ok(match dist {
        Dist::Voigt => {
            let v = Voigt::from_parts(law.mu, g, s)?;
            let cfg = QuadratureConfig::default();
            Box::new(move |x| v.pdf(x, &cfg))
        }
        Dist::DualVoigt => {
            let d = DualVoigt::from_parts(g, s)?;
            Box::new(move |x| Ok(d.pdf(x)))
        }
        Dist::DualMixing => {
            let m = DualMixing::from_parts(g, s)?;
            Box::new(move |x| Ok(m.pdf(x)))
        }
        Dist::VoigtMixing => {
            let l = Levy::new(s * s, g * g)?;
            Box::new(move |x| Ok(l.pdf(x)))
        }
        Dist::Cauchy => {
            let c = Cauchy::new(g)?;
            Box::new(move |x| Ok(c.pdf(x)))
        }
    })
}

fn cmd_pdf(args: &PdfArgs) -> CliResult<()> {
    let f = density(args.dist, &args.law)?;
    if let Some(x) = args.at {
        let v = f(x)?;
        let mut w = open_output(&args.out)?;
        let path = args.out.output.clone().unwrap_or_else(|| "<stdout>".into());
        writeln!(w, "{}", fmt_f64(v)).map_err(io_err(&path))?;
        return w.flush().map_err(io_err(&path));
    }
    let default = match args.dist {
        Dist::DualMixing => GridSpec::new(0.0, 1.0 / (args.law.sigma * args.law.sigma), 201),
        Dist::VoigtMixing => GridSpec::new(0.0, 10.0 * args.law.sigma * args.law.sigma, 201),
        _ => GridSpec::new(args.law.mu - 5.0, args.law.mu + 5.0, 201),
    };
    let xs = grid_spec(&args.grid, default).abscissae()?;
    let rows = xs
        .iter()
        .map(|&x| Ok(vec![fmt_f64(x), fmt_f64(f(x)?)]))
        .collect::<dualvoigt::Result<Vec<_>>>()?;
    write_table(&args.out, &["x".into(), "pdf".into()], &rows)
}

fn cmd_sample(args: &SampleArgs) -> CliResult<()> {
    require_centered(args.dist, args.law.mu)?;
    let (mu, g, s) = (args.law.mu, args.law.gamma, args.law.sigma);
    let sampler = args.sampler.unwrap_or(match args.dist {
        Dist::Voigt => Sampler::Conv,
        Dist::DualVoigt => Sampler::Reflect,
        Dist::DualMixing => Sampler::Reject,
        Dist::VoigtMixing | Dist::Cauchy => Sampler::Direct,
    });
    let mut rng = RngStream::new(args.seed, 0);
    let mismatch = || CliError::Usage(format!("sampler {:?} does not apply to {:?}", sampler, args.dist));
    let mut draw: Draw = match (args.dist, sampler) {
        (Dist::Voigt, Sampler::Conv) => {
            let v = Voigt::from_parts(mu, g, s)?;
            Box::new(move |r| Ok(v.sample_conv(r)))
        }
        (Dist::Voigt, Sampler::Mix) => {
            let v = Voigt::from_parts(mu, g, s)?;
            Box::new(move |r| Ok(v.sample_mix(r)))
        }
        (Dist::DualVoigt, Sampler::Reflect) => {
            let d = DualVoigt::from_parts(g, s)?;
            Box::new(move |r| Ok(d.sample_reflect(r)))
        }
        (Dist::DualVoigt, Sampler::Ar) => {
            let d = DualVoigt::from_parts(g, s)?;
            Box::new(move |r| d.sample_ar(r))
        }
        (Dist::DualVoigt, Sampler::Mixture) => {
            let m = DualMixing::from_parts(g, s)?;
            Box::new(move |r| m.sample_dual(r))
        }
        (Dist::DualMixing, Sampler::Reject) => {
            let m = DualMixing::from_parts(g, s)?;
            Box::new(move |r| m.sample(r))
        }
        (Dist::DualMixing, Sampler::Direct) => {
            let m = DualMixing::from_parts(g, s)?;
            Box::new(move |r| Ok(m.sample_direct(r)))
        }
        (Dist::VoigtMixing, Sampler::Direct) => {
            let l = Levy::new(s * s, g * g)?;
            Box::new(move |r| Ok(l.sample(r)))
        }
        (Dist::Cauchy, Sampler::Direct) => {
            let c = Cauchy::new(g)?;
            Box::new(move |r| Ok(c.sample(r)))
        }
        _ => return Err(mismatch()),
    };
    let rows = (0..args.n)
        .map(|_| draw(&mut rng).map(|x| vec![fmt_f64(x)]))
        .collect::<dualvoigt::Result<Vec<_>>>()?;
    write_table(&args.out, &["y".into()], &rows)
}

fn cmd_fit(args: &FitArgs) -> CliResult<()> {
    let sample = read_sample_csv(&args.input)?;
    let method: Method = args.method.into();
    let r = fit(&sample, method, &SimplexConfig::default())?;
    let header: Vec<String> = [
        "method",
        "n",
        "gamma_hat",
        "sigma_hat",
        "latent_m",
        "latent_var",
        "objective",
        "iterations",
        "converged",
    ]
    .map(String::from)
    .to_vec();
    let row = vec![
        method.to_string(),
        sample.len().to_string(),
        fmt_f64(r.gamma_hat),
        fmt_f64(r.sigma_hat),
        fmt_f64(r.latent_m),
        fmt_f64(r.latent_var),
        fmt_f64(r.objective_value),
        r.iterations.to_string(),
        r.converged.to_string(),
    ];
    write_table(&args.out, &header, &[row])?;
    if !r.converged {
        return Err(CliError::Numeric(dualvoigt::Error::OptimizerFailed {
            iterations: r.iterations,
        }));
    }
    Ok(())
}

fn cmd_table1(args: &Table1Args) -> CliResult<()> {
    let mut cfg = StudyConfig::<f64>::table1(args.seed);
    cfg.true_gamma = args.gamma;
    cfg.true_sigma = args.sigma;
    cfg.replicates = args.replicates;
    if !args.n.is_empty() {
        cfg.sample_sizes = args.n.clone();
    }
    let table = run_study(&cfg)?;
    let header: Vec<String> = SimTable::CSV_HEADER.map(String::from).to_vec();
    write_table(&args.out, &header, &table.csv_records())
}

fn cmd_verify(args: &VerifyArgs) -> CliResult<()> {
    let report = run_identity_suite(&standard_grid(), args.n, args.seed)?;
    let mut w = open_output(&args.out)?;
    let path = args.out.output.clone().unwrap_or_else(|| "<stdout>".into());
    for line in report.lines() {
        writeln!(w, "{line}").map_err(io_err(&path))?;
    }
    w.flush().map_err(io_err(&path))?;
    let failed = report.families().iter().filter(|f| !f.passed()).count();
    if failed > 0 {
        return Err(CliError::VerifyFailed { failed });
    }
    Ok(())
}

fn cmd_figures(args: &FiguresArgs) -> CliResult<()> {
    let (mut params, default_grid) = args.which.defaults();
    if !args.gamma.is_empty() {
        params.gammas = args.gamma.clone();
    }
    if let Some(s) = args.sigma {
        params = FigureParams { sigma: s, ..params };
    }
    let table = figure_data(args.which, &params, &grid_spec(&args.grid, default_grid))?;
    write_table(&args.out, &table.columns, &table.csv_records())
}

pub fn run(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Pdf(a) => cmd_pdf(a),
        Command::Sample(a) => cmd_sample(a),
        Command::Fit(a) => cmd_fit(a),
        Command::Table1(a) => cmd_table1(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Figures(a) => cmd_figures(a),
    }
}
