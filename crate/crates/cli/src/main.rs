use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use besovlab_core::harness::{sweep, write_report, write_sweep_csv, Report, SweepParam, SweepQuantity};
use besovlab_core::{
    besov_capacity_upper, besov_seminorm, corpus_entry, fractional_perimeter, lorentz_norm, rearrange, run_suite,
    weak_norm, BesovParams, BesovQuadConfig, CapacityFamilyConfig, Content, GeometricSet, InnerScheme, LevelPartition,
    LorentzParams, PerimeterMCConfig, ReportFormat, SuiteConfig,
};

/// Environment variable holding the default worker-thread count.
const THREADS_ENV: &str = "BESOVLAB_THREADS";

#[derive(Parser)]
#[command(name = "besovlab", version, about = "Besov, Lorentz and capacity computations and inequality checks")]
struct Cli {
    /// Worker threads (overrides BESOVLAB_THREADS).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suites and write a report.
    Verify(VerifyArgs),
    /// Evaluate one quantity.
    #[command(subcommand)]
    Compute(ComputeCmd),
    /// Evaluate one quantity over a parameter range, as CSV.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Config file; without it every suite runs with the defaults for --dim.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    dim: usize,
    /// Report path (`-` for stdout); defaults to the config's out_path.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => ReportFormat::Json,
            Format::Csv => ReportFormat::Csv,
        }
    }
}

#[derive(Args, Clone)]
struct EntryArgs {
    /// Corpus entry: bump, tent, two_bump, trunc_power or plateau.
    #[arg(long, default_value = "bump")]
    entry: String,
    #[arg(long, default_value_t = 1)]
    dim: usize,
    /// Cells per unit length.
    #[arg(long, default_value_t = 64)]
    resolution: usize,
}

#[derive(Args, Clone)]
struct ParamArgs {
    #[arg(long, default_value_t = 0.3)]
    beta: f64,
    #[arg(long, default_value_t = 1.0)]
    p: f64,
    #[arg(long, default_value_t = 1.0)]
    q: f64,
}

#[derive(Args, Clone)]
struct QuadArgs {
    #[arg(long)]
    radial_points: Option<usize>,
    #[arg(long)]
    angular_points: Option<usize>,
}

#[derive(Args, Clone)]
struct SetArgs {
    /// `ball:<c1,..,cn>:<r>` or `box:<lo1,..,lon>:<hi1,..,hin>`; `+` joins disjoint pieces.
    #[arg(long)]
    set: String,
}

#[derive(Args, Clone)]
struct PerimeterArgs {
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// `radial` or `mc:<inner samples>`.
    #[arg(long, default_value = "radial")]
    inner: String,
}

#[derive(Args, Clone)]
struct CapacityArgs {
    /// Relative widths, decreasing, comma separated.
    #[arg(long)]
    eps_grid: Option<String>,
    /// Grid cells per diameter of the set.
    #[arg(long)]
    cap_resolution: Option<usize>,
}

#[derive(Subcommand)]
enum ComputeCmd {
    /// Besov seminorm of a corpus entry.
    Besov {
        #[command(flatten)]
        entry: EntryArgs,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        quad: QuadArgs,
    },
    /// Lorentz (or weak) norm of a corpus entry against a content.
    Lorentz {
        #[command(flatten)]
        entry: EntryArgs,
        #[arg(long)]
        p0: f64,
        /// Second index; omit for the weak norm.
        #[arg(long)]
        q0: Option<f64>,
        /// `lebesgue` or `radial:<gamma>`.
        #[arg(long, default_value = "lebesgue")]
        content: String,
    },
    /// Monte Carlo fractional perimeter of a set.
    Perimeter {
        #[command(flatten)]
        set: SetArgs,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        mc: PerimeterArgs,
    },
    /// Upper bound on the Besov capacity of a set.
    Capacity {
        #[command(flatten)]
        set: SetArgs,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        cap: CapacityArgs,
        #[command(flatten)]
        quad: QuadArgs,
    },
    /// Print the radial profile of f^# as CSV (inner radius, value).
    Rearrange {
        #[command(flatten)]
        entry: EntryArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Quantity {
    Besov,
    Lorentz,
    Perimeter,
    Capacity,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    param: String,
    #[arg(long)]
    from: f64,
    #[arg(long)]
    to: f64,
    #[arg(long)]
    steps: usize,
    #[arg(long, value_enum, default_value_t = Quantity::Besov)]
    quantity: Quantity,
    #[command(flatten)]
    entry: EntryArgs,
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    quad: QuadArgs,
    /// Set for perimeter and capacity sweeps.
    #[arg(long)]
    set: Option<String>,
    #[command(flatten)]
    mc: PerimeterArgs,
    #[command(flatten)]
    cap: CapacityArgs,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn thread_count(flag: Option<usize>) -> Result<Option<usize>> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .with_context(|| format!("{THREADS_ENV}={v} is not a thread count")),
        Err(_) => Ok(None),
    }
}

fn params(a: &ParamArgs, dim: usize) -> Result<BesovParams> {
    Ok(BesovParams::new(a.beta, a.p, a.q, dim)?)
}

fn quad(a: &QuadArgs, dim: usize) -> BesovQuadConfig {
    let mut q = BesovQuadConfig::for_dim(dim);
    if let Some(r) = a.radial_points {
        q.radial_points = r;
    }
    if let Some(m) = a.angular_points {
        q.angular_points = m;
    }
    q
}

fn floats(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().with_context(|| format!("`{t}` is not a number")))
        .collect()
}

fn parse_set(spec: &str) -> Result<GeometricSet> {
    let pieces = spec
        .split('+')
        .map(|piece| {
            let parts: Vec<&str> = piece.trim().split(':').collect();
            match parts.as_slice() {
                ["ball", c, r] => Ok(GeometricSet::ball(&floats(c)?, r.trim().parse()?)?),
                ["box", lo, hi] => Ok(GeometricSet::axis_box(&floats(lo)?, &floats(hi)?)?),
                _ => Err(anyhow!("cannot parse set piece `{piece}`; expected ball:<c>:<r> or box:<lo>:<hi>")),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    match pieces.len() {
        1 => Ok(pieces.into_iter().next().expect("one piece")),
        _ => Ok(GeometricSet::disjoint_union(pieces)?),
    }
}

fn perimeter_cfg(a: &PerimeterArgs) -> Result<PerimeterMCConfig> {
    let inner_scheme = match a.inner.as_str() {
        "radial" => InnerScheme::RadialExact,
        other => match other.strip_prefix("mc:") {
            Some(n) => InnerScheme::MCImportance {
                samples: n.parse().with_context(|| format!("inner sample count `{n}`"))?,
                exponent: None,
            },
            None => bail!("unknown inner scheme `{other}` (radial or mc:<samples>)"),
        },
    };
    Ok(PerimeterMCConfig {
        outer_samples: a.samples,
        inner_scheme,
        seed: a.seed,
    })
}

fn capacity_cfg(a: &CapacityArgs) -> Result<CapacityFamilyConfig> {
    let mut fam = CapacityFamilyConfig::default();
    if let Some(g) = &a.eps_grid {
        fam.eps_grid = floats(g)?;
    }
    if let Some(r) = a.cap_resolution {
        fam.resolution = r;
    }
    Ok(fam)
}

fn content(s: &str) -> Result<Content> {
    if s == "lebesgue" {
        return Ok(Content::LebesgueVolume);
    }
    match s.strip_prefix("radial:") {
        Some(g) => Ok(Content::RadialWeight {
            gamma: g.parse().with_context(|| format!("radial weight exponent `{g}`"))?,
        }),
        None => bail!("unknown content `{s}` (lebesgue or radial:<gamma>)"),
    }
}

fn open_out(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    match path {
        Some(p) if p.as_os_str() != "-" => Ok(Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        ))),
        _ => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
    }
}

fn verify(a: VerifyArgs) -> Result<ExitCode> {
    let mut cfg = match &a.config {
        Some(p) => SuiteConfig::from_file(p).with_context(|| format!("reading {}", p.display()))?,
        None => SuiteConfig::for_dim(a.dim),
    };
    if let Some(s) = a.seed {
        cfg.seed = s;
    }
    let out = a.out.clone().unwrap_or_else(|| PathBuf::from(&cfg.out_path));
    let checks = run_suite(&cfg)?;
    let report = Report::new(checks, Some(&cfg));
    let mut w = open_out(&Some(out))?;
    write_report(&report, a.format.into(), &mut w)?;
    w.flush()?;
    let failed = report.summary.total - report.summary.passed;
    eprintln!("{} checks, {} passed, {} failed", report.summary.total, report.summary.passed, failed);
    Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn compute(cmd: ComputeCmd) -> Result<()> {
    match cmd {
        ComputeCmd::Besov { entry, params: pa, quad: qa } => {
            let f = corpus_entry(&entry.entry, entry.dim, entry.resolution)?;
            let v = besov_seminorm(&f, &params(&pa, entry.dim)?, &quad(&qa, entry.dim))?;
            println!("besov_seminorm = {v}");
        }
        ComputeCmd::Lorentz { entry, p0, q0, content: c } => {
            let f = corpus_entry(&entry.entry, entry.dim, entry.resolution)?;
            let nu = content(&c)?;
            let v = match q0 {
                Some(q0) => lorentz_norm(&f, &LorentzParams::new(p0, q0)?, &nu, &LevelPartition::grid_values(&f))?,
                None => weak_norm(&f, p0, &nu)?,
            };
            println!("lorentz_norm = {v}");
        }
        ComputeCmd::Perimeter { set, params: pa, mc } => {
            let e = parse_set(&set.set)?;
            let est = fractional_perimeter(&e, &params(&pa, e.dim())?, &perimeter_cfg(&mc)?)?;
            println!("perimeter = {}\nstderr = {}\nsamples = {}", est.value, est.stderr, est.samples);
        }
        ComputeCmd::Capacity { set, params: pa, cap, quad: qa } => {
            let k = parse_set(&set.set)?;
            let dim = k.dim();
            let bound = besov_capacity_upper(&k, &params(&pa, dim)?, &capacity_cfg(&cap)?, &quad(&qa, dim))?;
            println!("capacity_upper = {}\neps = {}", bound.value, bound.eps);
            for (e, v) in &bound.evaluations {
                println!("eval eps={e} value={v}");
            }
        }
        ComputeCmd::Rearrange { entry } => {
            let f = corpus_entry(&entry.entry, entry.dim, entry.resolution)?;
            let prof = rearrange(&f);
            let mut w = csv::Writer::from_writer(io::stdout().lock());
            w.write_record(["radius", "value"])?;
            for (r, v) in prof.radii.iter().zip(&prof.values) {
                w.write_record([r.to_string(), v.to_string()])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn run_sweep(a: SweepArgs) -> Result<()> {
    let param: SweepParam = a.param.parse()?;
    let set = || -> Result<GeometricSet> {
        parse_set(a.set.as_deref().ok_or_else(|| anyhow!("--set is required for this quantity"))?)
    };
    let (quantity, dim) = match a.quantity {
        Quantity::Besov => (
            SweepQuantity::Besov(corpus_entry(&a.entry.entry, a.entry.dim, a.entry.resolution)?, quad(&a.quad, a.entry.dim)),
            a.entry.dim,
        ),
        Quantity::Lorentz => (
            SweepQuantity::SobolevLorentz(corpus_entry(&a.entry.entry, a.entry.dim, a.entry.resolution)?),
            a.entry.dim,
        ),
        Quantity::Perimeter => {
            let e = set()?;
            let dim = e.dim();
            (SweepQuantity::Perimeter(e, perimeter_cfg(&a.mc)?), dim)
        }
        Quantity::Capacity => {
            let k = set()?;
            let dim = k.dim();
            (SweepQuantity::Capacity(k, capacity_cfg(&a.cap)?, quad(&a.quad, dim)), dim)
        }
    };
    let rows = sweep(&params(&a.params, dim)?, param, a.from, a.to, a.steps, &quantity)?;
    let mut w = open_out(&a.out)?;
    write_sweep_csv(&rows, param, &mut w)?;
    w.flush()?;
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    if let Some(n) = thread_count(cli.threads)? {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring the thread pool")?;
    }
    match cli.command {
        Command::Verify(a) => verify(a),
        Command::Compute(c) => compute(c).map(|_| ExitCode::SUCCESS),
        Command::Sweep(a) => run_sweep(a).map(|_| ExitCode::SUCCESS),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
