//! Command-line harness over the rocdp library: exact and empirical trade-off
//! curves, noise sampling, Fisher/moment summaries, calibration, query
//! answering, CLT sweeps, the reference tables, uncertainty products, and the
//! Levy diagnostic.
//!
//! Every numeric flag can instead come from a JSON config file (`--config`);
//! flags override config values, config values override defaults, and the
//! effective configuration is echoed to stderr as JSON. Exit codes: 0 success,
//! 2 usage error, 3 numeric failure.

use std::fmt::Write as _;
use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use rocdp::empirical::{clt_deviation, empirical_tradeoff, CltReport, DirectionMode};
use rocdp::fisher::{
    fisher_info_exact, fisher_info_mc, gdp_scale, second_moment_exact, uncertainty_products_with,
    FisherSummary,
};
use rocdp::lp_sampler::{
    sample_independent, sample_lp_sphere, sample_norm_power, NormPowerDensity,
};
use rocdp::mechanisms::{answer_query, compare_mechanisms, MechanismSpec, QueryAnswer};
use rocdp::noise1d::{NoiseFamily, NoiseModel, PrivacyBudget};
use rocdp::special::normal_cdf;
use rocdp::tradeoff::{levy_distance_empirical, TradeoffCurve};
use rocdp::Error as LibError;

enum CliError {
    Usage(String),
    Numeric(String),
}

type CliResult<T> = Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

impl From<LibError> for CliError {
    fn from(e: LibError) -> Self {
        match e {
            LibError::Numeric(m) => CliError::Numeric(m),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(format!("io error: {e}"))
    }
}

#[derive(Parser)]
#[command(name = "rocdp", about = "Trade-off curve toolkit for noise-addition mechanisms", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a trade-off curve as CSV
    Roc(RocArgs),
    /// Draw noise samples (CSV or raw little-endian f64 rows)
    Sample(SampleArgs),
    /// Fisher information and moment summary for one (n, p, alpha)
    Fisher(FisherArgs),
    /// Calibrate a 1-D noise family to a privacy budget
    Calibrate(CalibrateArgs),
    /// Add calibrated noise to a query answer
    Answer(AnswerArgs),
    /// Sweep the CLT-to-GDP convergence experiment
    CltExperiment(CltArgs),
    /// Reproduce the moment/Fisher and mechanism-comparison tables
    Tables(TablesArgs),
    /// Uncertainty products over a (n, p, alpha) grid
    Uncertainty(UncertaintyArgs),
    /// Levy distance of a sample file to the standard normal CDF
    Levy(LevyArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Roc(a) => cmd_roc(a),
        Command::Sample(a) => cmd_sample(a),
        Command::Fisher(a) => cmd_fisher(a),
        Command::Calibrate(a) => cmd_calibrate(a),
        Command::Answer(a) => cmd_answer(a),
        Command::CltExperiment(a) => cmd_clt(a),
        Command::Tables(a) => cmd_tables(a),
        Command::Uncertainty(a) => cmd_uncertainty(a),
        Command::Levy(a) => cmd_levy(a),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(CliError::Numeric(m)) => {
            eprintln!("numeric error: {m}");
            ExitCode::from(3)
        }
    }
}

// ---------- shared plumbing ----------

fn load_config<T: for<'de> Deserialize<'de> + Default>(path: &Option<PathBuf>) -> CliResult<T> {
    match path {
        None => Ok(T::default()),
        Some(p) => {
            let text = fs::read_to_string(p)?;
            serde_json::from_str(&text)
                .map_err(|e| usage(format!("bad config {}: {e}", p.display())))
        }
    }
}

fn echo_config<T: Serialize>(cfg: &T) -> CliResult<()> {
    let json = serde_json::to_string(cfg).map_err(|e| usage(e.to_string()))?;
    eprintln!("{json}");
    Ok(())
}

fn write_text(out: &Option<PathBuf>, content: &str) -> CliResult<()> {
    match out {
        Some(p) => fs::write(p, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn write_bytes(out: &Option<PathBuf>, content: &[u8]) -> CliResult<()> {
    match out {
        Some(p) => fs::write(p, content)?,
        None => std::io::stdout().write_all(content)?,
    }
    Ok(())
}

fn parse_f64_list(s: &str, flag: &str) -> CliResult<Vec<f64>> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| usage(format!("bad {flag} entry {t:?}: {e}"))))
        .collect()
}

fn parse_usize_list(s: &str, flag: &str) -> CliResult<Vec<usize>> {
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|e| usage(format!("bad {flag} entry {t:?}: {e}"))))
        .collect()
}

fn parse_direction(s: &str) -> CliResult<DirectionMode> {
    match s {
        "random-unit" => Ok(DirectionMode::RandomUnit),
        "axis" => Ok(DirectionMode::Axis),
        other => Err(usage(format!("unknown direction {other:?} (random-unit | axis)"))),
    }
}

fn parse_family(s: &str) -> CliResult<NoiseFamily> {
    match s {
        "laplace" => Ok(NoiseFamily::Laplace),
        "gaussian" => Ok(NoiseFamily::Gaussian),
        "tlap" => Ok(NoiseFamily::TruncatedLaplace),
        "dgeom" => Ok(NoiseFamily::DoubleGeometric),
        "tgu" => Ok(NoiseFamily::Tgu),
        other => Err(usage(format!(
            "unknown family {other:?} (laplace | gaussian | tlap | dgeom | tgu)"
        ))),
    }
}

macro_rules! pick {
    ($flag:expr, $cfg:expr, $default:expr) => {
        $flag.or($cfg).unwrap_or($default)
    };
}

macro_rules! need {
    ($flag:expr, $cfg:expr, $name:expr) => {
        $flag.or($cfg).ok_or_else(|| usage(concat!($name, " is required")))?
    };
}

// ---------- roc ----------

#[derive(Args)]
struct RocArgs {
    /// gdp | fepsdelta | noise | empirical
    #[arg(long)]
    kind: Option<String>,
    #[arg(long)]
    mu: Option<f64>,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
    /// 1-D family for --kind noise (laplace | gaussian | tlap | dgeom | tgu)
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    scale: Option<f64>,
    /// truncation half-width (tlap, standard units)
    #[arg(long)]
    h: Option<f64>,
    /// geometric parameter (dgeom, tgu)
    #[arg(long)]
    p_geom: Option<f64>,
    #[arg(long)]
    shift: Option<f64>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    c: Option<f64>,
    /// Monte Carlo sample size for --kind empirical
    #[arg(long, short = 'N')]
    count: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// random-unit | axis
    #[arg(long)]
    direction: Option<String>,
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RocPartial {
    kind: Option<String>,
    mu: Option<f64>,
    eps: Option<f64>,
    delta: Option<f64>,
    family: Option<String>,
    scale: Option<f64>,
    h: Option<f64>,
    p_geom: Option<f64>,
    shift: Option<f64>,
    n: Option<usize>,
    p: Option<f64>,
    alpha: Option<f64>,
    c: Option<f64>,
    count: Option<usize>,
    seed: Option<u64>,
    direction: Option<String>,
    grid: Option<usize>,
}

#[derive(Serialize)]
struct RocConfig {
    command: &'static str,
    kind: String,
    mu: f64,
    eps: f64,
    delta: f64,
    family: String,
    scale: f64,
    h: Option<f64>,
    p_geom: Option<f64>,
    shift: f64,
    n: usize,
    p: f64,
    alpha: f64,
    c: f64,
    count: usize,
    seed: u64,
    direction: String,
    grid: usize,
}

fn build_model(
    family: &str,
    scale: f64,
    h: Option<f64>,
    p_geom: Option<f64>,
) -> CliResult<NoiseModel> {
    let model = match parse_family(family)? {
        NoiseFamily::Laplace => NoiseModel::Laplace { scale },
        NoiseFamily::Gaussian => NoiseModel::Gaussian { scale },
        NoiseFamily::TruncatedLaplace => NoiseModel::TruncatedLaplace {
            scale,
            h: h.ok_or_else(|| usage("--h is required for tlap"))?,
        },
        NoiseFamily::DoubleGeometric => NoiseModel::DoubleGeometric {
            scale,
            p_geom: p_geom.ok_or_else(|| usage("--p-geom is required for dgeom"))?,
        },
        NoiseFamily::Tgu => NoiseModel::Tgu {
            scale,
            p_geom: p_geom.ok_or_else(|| usage("--p-geom is required for tgu"))?,
        },
    };
    model.validate()?;
    Ok(model)
}

fn cmd_roc(a: RocArgs) -> CliResult<()> {
    let f: RocPartial = load_config(&a.config)?;
    let cfg = RocConfig {
        command: "roc",
        kind: pick!(a.kind, f.kind, "gdp".into()),
        mu: pick!(a.mu, f.mu, 1.0),
        eps: pick!(a.eps, f.eps, 1.0),
        delta: pick!(a.delta, f.delta, 0.0),
        family: pick!(a.family, f.family, "laplace".into()),
        scale: pick!(a.scale, f.scale, 1.0),
        h: a.h.or(f.h),
        p_geom: a.p_geom.or(f.p_geom),
        shift: pick!(a.shift, f.shift, 1.0),
        n: pick!(a.n, f.n, 30),
        p: pick!(a.p, f.p, 2.0),
        alpha: pick!(a.alpha, f.alpha, 2.0),
        c: pick!(a.c, f.c, 0.5),
        count: pick!(a.count, f.count, 10_000),
        seed: pick!(a.seed, f.seed, 0),
        direction: pick!(a.direction, f.direction, "random-unit".into()),
        grid: pick!(a.grid, f.grid, 101),
    };
    echo_config(&cfg)?;
    if cfg.grid < 2 {
        return Err(usage("--grid must be at least 2"));
    }
    let (curve, header) = match cfg.kind.as_str() {
        "gdp" => (TradeoffCurve::gdp(cfg.mu)?, format!("# kind=gdp mu={}", cfg.mu)),
        "fepsdelta" => (
            TradeoffCurve::f_eps_delta(cfg.eps, cfg.delta)?,
            format!("# kind=fepsdelta eps={} delta={}", cfg.eps, cfg.delta),
        ),
        "noise" => {
            let model = build_model(&cfg.family, cfg.scale, cfg.h, cfg.p_geom)?;
            let curve = model.exact_tradeoff(cfg.shift)?;
            (curve, format!("# kind=noise family={} scale={} shift={}", cfg.family, cfg.scale, cfg.shift))
        }
        "empirical" => {
            // norm-power noise rescaled for mu-GDP, estimated along a unit
            // direction
            let t = gdp_scale(cfg.n, cfg.p, cfg.alpha, cfg.c, cfg.mu)?;
            let scaled =
                NormPowerDensity::new(cfg.n, cfg.p, cfg.alpha, cfg.c * t.powf(-cfg.alpha))?;
            let mode = parse_direction(&cfg.direction)?;
            let v = rocdp::empirical::direction(
                mode,
                cfg.n,
                &mut rocdp::rng::substream_rng(cfg.seed, u64::MAX),
            );
            let curve = empirical_tradeoff(&scaled, &v, cfg.count, cfg.seed)?.to_tradeoff()?;
            (
                curve,
                format!(
                    "# kind=empirical n={} p={} alpha={} c={} mu={} N={} seed={}",
                    cfg.n, cfg.p, cfg.alpha, cfg.c, cfg.mu, cfg.count, cfg.seed
                ),
            )
        }
        other => return Err(usage(format!("unknown kind {other:?} (gdp | fepsdelta | noise | empirical)"))),
    };
    let body = curve.to_csv(cfg.grid)?;
    write_text(&a.out, &format!("{header}\n{body}"))
}

// ---------- sample ----------

#[derive(Args)]
struct SampleArgs {
    /// norm-power | independent | sphere | noise1d
    #[arg(long)]
    mode: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    c: Option<f64>,
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    scale: Option<f64>,
    #[arg(long)]
    h: Option<f64>,
    #[arg(long)]
    p_geom: Option<f64>,
    #[arg(long, short = 'N')]
    count: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// csv | bin (raw little-endian f64, row-major)
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct SamplePartial {
    mode: Option<String>,
    n: Option<usize>,
    p: Option<f64>,
    alpha: Option<f64>,
    c: Option<f64>,
    family: Option<String>,
    scale: Option<f64>,
    h: Option<f64>,
    p_geom: Option<f64>,
    count: Option<usize>,
    seed: Option<u64>,
    format: Option<String>,
}

#[derive(Serialize)]
struct SampleConfig {
    command: &'static str,
    mode: String,
    n: usize,
    p: f64,
    alpha: f64,
    c: f64,
    family: String,
    scale: f64,
    h: Option<f64>,
    p_geom: Option<f64>,
    count: usize,
    seed: u64,
    format: String,
}

fn cmd_sample(a: SampleArgs) -> CliResult<()> {
    let f: SamplePartial = load_config(&a.config)?;
    let cfg = SampleConfig {
        command: "sample",
        mode: pick!(a.mode, f.mode, "norm-power".into()),
        n: pick!(a.n, f.n, 2),
        p: pick!(a.p, f.p, 2.0),
        alpha: pick!(a.alpha, f.alpha, 2.0),
        c: pick!(a.c, f.c, 1.0),
        family: pick!(a.family, f.family, "laplace".into()),
        scale: pick!(a.scale, f.scale, 1.0),
        h: a.h.or(f.h),
        p_geom: a.p_geom.or(f.p_geom),
        count: pick!(a.count, f.count, 100),
        seed: pick!(a.seed, f.seed, 0),
        format: pick!(a.format, f.format, "csv".into()),
    };
    echo_config(&cfg)?;
    let rows: Vec<Vec<f64>> = match cfg.mode.as_str() {
        "norm-power" => {
            let d = NormPowerDensity::new(cfg.n, cfg.p, cfg.alpha, cfg.c)?;
            sample_norm_power(&d, cfg.count, cfg.seed)?
        }
        "independent" => sample_independent(cfg.p, cfg.n, cfg.count, cfg.seed)?,
        "sphere" => sample_lp_sphere(cfg.p, cfg.n, cfg.count, cfg.seed)?,
        "noise1d" => {
            let model = build_model(&cfg.family, cfg.scale, cfg.h, cfg.p_geom)?;
            model.sample(cfg.count, cfg.seed).into_iter().map(|x| vec![x]).collect()
        }
        other => {
            return Err(usage(format!(
                "unknown mode {other:?} (norm-power | independent | sphere | noise1d)"
            )))
        }
    };
    match cfg.format.as_str() {
        "csv" => {
            let dim = rows.first().map_or(0, Vec::len);
            let mut text = (1..=dim).map(|i| format!("x{i}")).collect::<Vec<_>>().join(",");
            text.push('\n');
            for row in &rows {
                let line = row.iter().map(|v| format!("{v:.17}")).collect::<Vec<_>>().join(",");
                text.push_str(&line);
                text.push('\n');
            }
            write_text(&a.out, &text)
        }
        "bin" => {
            let mut bytes = Vec::with_capacity(rows.len() * cfg.n * 8);
            for row in &rows {
                for v in row {
                    bytes.extend_from_slice(&v.to_le_bytes());
                }
            }
            write_bytes(&a.out, &bytes)
        }
        other => Err(usage(format!("unknown format {other:?} (csv | bin)"))),
    }
}

// ---------- fisher ----------

#[derive(Args)]
struct FisherArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    /// Monte Carlo cross-check budget (0 = skip)
    #[arg(long)]
    mc_count: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FisherPartial {
    n: Option<usize>,
    p: Option<f64>,
    alpha: Option<f64>,
    mc_count: Option<usize>,
    seed: Option<u64>,
}

#[derive(Serialize)]
struct FisherConfig {
    command: &'static str,
    n: usize,
    p: f64,
    alpha: f64,
    mc_count: usize,
    seed: u64,
}

#[derive(Serialize)]
struct FisherOutput {
    summary: FisherSummary,
    fisher_mc: Option<f64>,
}

fn cmd_fisher(a: FisherArgs) -> CliResult<()> {
    let f: FisherPartial = load_config(&a.config)?;
    let cfg = FisherConfig {
        command: "fisher",
        n: need!(a.n, f.n, "--n"),
        p: need!(a.p, f.p, "--p"),
        alpha: need!(a.alpha, f.alpha, "--alpha"),
        mc_count: pick!(a.mc_count, f.mc_count, 0),
        seed: pick!(a.seed, f.seed, 0),
    };
    echo_config(&cfg)?;
    let summary = FisherSummary::compute(cfg.n, cfg.p, cfg.alpha)?;
    let fisher_mc = if cfg.mc_count > 0 {
        let d = NormPowerDensity::new(cfg.n, cfg.p, cfg.alpha, 1.0)?;
        Some(fisher_info_mc(&d, cfg.mc_count, cfg.seed)?)
    } else {
        None
    };
    let out = FisherOutput { summary, fisher_mc };
    let json = serde_json::to_string_pretty(&out).map_err(|e| usage(e.to_string()))?;
    write_text(&a.out, &format!("{json}\n"))
}

// ---------- calibrate ----------

#[derive(Args)]
struct CalibrateArgs {
    /// pure | approx | gdp
    #[arg(long)]
    budget: Option<String>,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    mu: Option<f64>,
    #[arg(long)]
    sens: Option<f64>,
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct CalibratePartial {
    budget: Option<String>,
    eps: Option<f64>,
    delta: Option<f64>,
    mu: Option<f64>,
    sens: Option<f64>,
    family: Option<String>,
}

#[derive(Serialize)]
struct CalibrateConfig {
    command: &'static str,
    budget: String,
    eps: f64,
    delta: f64,
    mu: f64,
    sens: f64,
    family: String,
}

fn build_budget(kind: &str, eps: f64, delta: f64, mu: f64) -> CliResult<PrivacyBudget> {
    let budget = match kind {
        "pure" => PrivacyBudget::PureDp { eps },
        "approx" => PrivacyBudget::ApproxDp { eps, delta },
        "gdp" => PrivacyBudget::Gdp { mu },
        other => return Err(usage(format!("unknown budget {other:?} (pure | approx | gdp)"))),
    };
    budget.validate()?;
    Ok(budget)
}

fn cmd_calibrate(a: CalibrateArgs) -> CliResult<()> {
    let f: CalibratePartial = load_config(&a.config)?;
    let cfg = CalibrateConfig {
        command: "calibrate",
        budget: pick!(a.budget, f.budget, "pure".into()),
        eps: pick!(a.eps, f.eps, 1.0),
        delta: pick!(a.delta, f.delta, 0.01),
        mu: pick!(a.mu, f.mu, 1.0),
        sens: pick!(a.sens, f.sens, 1.0),
        family: pick!(a.family, f.family, "laplace".into()),
    };
    echo_config(&cfg)?;
    let budget = build_budget(&cfg.budget, cfg.eps, cfg.delta, cfg.mu)?;
    let family = parse_family(&cfg.family)?;
    let spec = MechanismSpec::calibrate_1d(budget, cfg.sens, family)?;
    let json = serde_json::to_string_pretty(&spec).map_err(|e| usage(e.to_string()))?;
    write_text(&a.out, &format!("{json}\n"))
}

// ---------- answer ----------

#[derive(Args)]
struct AnswerArgs {
    /// path to a MechanismSpec JSON (as produced by `calibrate`)
    #[arg(long)]
    spec: PathBuf,
    /// comma-separated query answer values
    #[arg(long)]
    values: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct AnswerPartial {
    values: Option<String>,
    seed: Option<u64>,
}

#[derive(Serialize)]
struct AnswerConfig {
    command: &'static str,
    spec: String,
    values: String,
    seed: u64,
}

fn cmd_answer(a: AnswerArgs) -> CliResult<()> {
    let f: AnswerPartial = load_config(&a.config)?;
    let cfg = AnswerConfig {
        command: "answer",
        spec: a.spec.display().to_string(),
        values: need!(a.values, f.values, "--values"),
        seed: pick!(a.seed, f.seed, 0),
    };
    echo_config(&cfg)?;
    let text = fs::read_to_string(&a.spec)?;
    let spec: MechanismSpec = serde_json::from_str(&text)
        .map_err(|e| usage(format!("bad mechanism spec {}: {e}", a.spec.display())))?;
    let values = parse_f64_list(&cfg.values, "--values")?;
    let answer = QueryAnswer::new(values)?;
    let noisy = answer_query(&answer, &spec, cfg.seed)?;
    let json = serde_json::to_string_pretty(&noisy).map_err(|e| usage(e.to_string()))?;
    write_text(&a.out, &format!("{json}\n"))
}

// ---------- clt-experiment ----------

#[derive(Args)]
struct CltArgs {
    /// comma-separated dimensions to sweep
    #[arg(long)]
    sweep_n: Option<String>,
    /// comma-separated Monte Carlo sample sizes to sweep
    #[arg(long)]
    sweep_count: Option<String>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    c: Option<f64>,
    #[arg(long)]
    mu: Option<f64>,
    /// number of seeds per sweep point (seeds 0..this)
    #[arg(long)]
    seeds: Option<u64>,
    /// random-unit | axis
    #[arg(long)]
    direction: Option<String>,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct CltPartial {
    sweep_n: Option<String>,
    sweep_count: Option<String>,
    p: Option<f64>,
    alpha: Option<f64>,
    c: Option<f64>,
    mu: Option<f64>,
    seeds: Option<u64>,
    direction: Option<String>,
}

#[derive(Serialize)]
struct CltConfig {
    command: &'static str,
    sweep_n: String,
    sweep_count: String,
    p: f64,
    alpha: f64,
    c: f64,
    mu: f64,
    seeds: u64,
    direction: String,
}

fn cmd_clt(a: CltArgs) -> CliResult<()> {
    let f: CltPartial = load_config(&a.config)?;
    let cfg = CltConfig {
        command: "clt-experiment",
        sweep_n: pick!(a.sweep_n, f.sweep_n, "30".into()),
        sweep_count: pick!(a.sweep_count, f.sweep_count, "10000".into()),
        p: pick!(a.p, f.p, 2.0),
        alpha: pick!(a.alpha, f.alpha, 2.0),
        c: pick!(a.c, f.c, 0.5),
        mu: pick!(a.mu, f.mu, 1.0),
        seeds: pick!(a.seeds, f.seeds, 20),
        direction: pick!(a.direction, f.direction, "random-unit".into()),
    };
    echo_config(&cfg)?;
    let ns = parse_usize_list(&cfg.sweep_n, "--sweep-n")?;
    let counts = parse_usize_list(&cfg.sweep_count, "--sweep-count")?;
    let mode = parse_direction(&cfg.direction)?;
    let mut csv =
        String::from("n,count,seed,t_scale,sup_to_gmu,ks_projection,levy_projection\n");
    for &n in &ns {
        for &count in &counts {
            for seed in 0..cfg.seeds {
                let r: CltReport =
                    clt_deviation(n, cfg.p, cfg.alpha, cfg.c, cfg.mu, mode, count, seed)?;
                writeln!(
                    csv,
                    "{n},{count},{seed},{:.12},{:.12},{:.12},{:.12}",
                    r.t_scale, r.sup_to_gmu, r.ks_projection, r.levy_projection
                )
                .unwrap();
            }
        }
    }
    write_text(&a.out, &csv)
}

// ---------- tables ----------

#[derive(Args)]
struct TablesArgs {
    /// moments | mechanisms | both
    #[arg(long)]
    which: Option<String>,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
    /// comma-separated dimensions for the moments table
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    mc_count: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct TablesPartial {
    which: Option<String>,
    eps: Option<f64>,
    delta: Option<f64>,
    n: Option<String>,
    mc_count: Option<usize>,
    seed: Option<u64>,
}

#[derive(Serialize)]
struct TablesConfig {
    command: &'static str,
    which: String,
    eps: f64,
    delta: f64,
    n: String,
    mc_count: usize,
    seed: u64,
}

fn cmd_tables(a: TablesArgs) -> CliResult<()> {
    let f: TablesPartial = load_config(&a.config)?;
    let cfg = TablesConfig {
        command: "tables",
        which: pick!(a.which, f.which, "both".into()),
        eps: pick!(a.eps, f.eps, 1.0),
        delta: pick!(a.delta, f.delta, 1e-5),
        n: pick!(a.n, f.n, "2,10,30,100".into()),
        mc_count: pick!(a.mc_count, f.mc_count, 10_000),
        seed: pick!(a.seed, f.seed, 0),
    };
    echo_config(&cfg)?;
    let mut text = String::new();
    let moments = cfg.which == "moments" || cfg.which == "both";
    let mechanisms = cfg.which == "mechanisms" || cfg.which == "both";
    if !moments && !mechanisms {
        return Err(usage(format!("unknown table {:?} (moments | mechanisms | both)", cfg.which)));
    }
    if moments {
        let ns = parse_usize_list(&cfg.n, "--n")?;
        text.push_str("# table: moments\n");
        text.push_str("n,p,alpha,fisher_exact,second_moment_exact,fisher_mc,fisher_mc_se\n");
        for &n in &ns {
            for (p, alpha) in [(1.0, 1.0), (2.0, 1.0), (2.0, 2.0)] {
                let fi = fisher_info_exact(n, p, alpha)?;
                let sm = second_moment_exact(n, p, alpha)?;
                let d = NormPowerDensity::new(n, p, alpha, 1.0)?;
                let (mc, se) = fisher_mc_with_se(&d, cfg.mc_count, cfg.seed)?;
                writeln!(text, "{n},{p},{alpha},{fi:.12},{sm:.12},{mc:.12},{se:.12}").unwrap();
            }
        }
    }
    if mechanisms {
        let cmp = compare_mechanisms(cfg.eps, cfg.delta)?;
        text.push_str("# table: mechanisms\n");
        text.push_str("mechanism,normalized_variance\n");
        writeln!(text, "laplace,{:.12}", cmp.laplace).unwrap();
        writeln!(text, "gaussian_2006,{:.12}", cmp.gaussian_2006).unwrap();
        writeln!(text, "truncated_laplace,{:.12}", cmp.truncated_laplace).unwrap();
        writeln!(text, "gaussian_2019,{:.12}", cmp.gaussian_2019).unwrap();
    }
    write_text(&a.out, &text)
}

/// Mean and standard error of ||grad phi||^2 / n over a fresh sample.
fn fisher_mc_with_se(d: &NormPowerDensity, count: usize, seed: u64) -> CliResult<(f64, f64)> {
    let rows = sample_norm_power(d, count, seed)?;
    let vals: Vec<f64> = rows
        .iter()
        .map(|x| {
            let g = d.grad_phi(x)?;
            Ok(g.iter().map(|v| v * v).sum::<f64>() / d.n as f64)
        })
        .collect::<Result<_, LibError>>()?;
    let mean = vals.iter().sum::<f64>() / count as f64;
    let var = vals.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / count as f64;
    Ok((mean, (var / count as f64).sqrt()))
}

// ---------- uncertainty ----------

#[derive(Args)]
struct UncertaintyArgs {
    /// comma-separated dimensions
    #[arg(long)]
    n: Option<String>,
    /// comma-separated p values
    #[arg(long)]
    p: Option<String>,
    /// comma-separated alpha values
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    mc_count: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct UncertaintyPartial {
    n: Option<String>,
    p: Option<String>,
    alpha: Option<String>,
    mc_count: Option<usize>,
    seed: Option<u64>,
}

#[derive(Serialize)]
struct UncertaintyConfig {
    command: &'static str,
    n: String,
    p: String,
    alpha: String,
    mc_count: usize,
    seed: u64,
}

fn cmd_uncertainty(a: UncertaintyArgs) -> CliResult<()> {
    let f: UncertaintyPartial = load_config(&a.config)?;
    let cfg = UncertaintyConfig {
        command: "uncertainty",
        n: pick!(a.n, f.n, "2,10,30,100".into()),
        p: pick!(a.p, f.p, "1,1.5,2,3".into()),
        alpha: pick!(a.alpha, f.alpha, "1,1.5,2,3".into()),
        mc_count: pick!(a.mc_count, f.mc_count, 20_000),
        seed: pick!(a.seed, f.seed, 0),
    };
    echo_config(&cfg)?;
    let ns = parse_usize_list(&cfg.n, "--n")?;
    let ps = parse_f64_list(&cfg.p, "--p")?;
    let alphas = parse_f64_list(&cfg.alpha, "--alpha")?;
    let mut csv = String::from("n,p,alpha,product_l2,product_linf_mc\n");
    for &n in &ns {
        for &p in &ps {
            for &alpha in &alphas {
                let (l2, linf) =
                    uncertainty_products_with(n, p, alpha, cfg.mc_count, cfg.seed)?;
                writeln!(csv, "{n},{p},{alpha},{l2:.12},{linf:.12}").unwrap();
            }
        }
    }
    write_text(&a.out, &csv)
}

// ---------- levy ----------

#[derive(Args)]
struct LevyArgs {
    /// sample file, one float per line ("-" = stdin)
    #[arg(long)]
    input: Option<String>,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct LevyPartial {
    input: Option<String>,
}

#[derive(Serialize)]
struct LevyConfig {
    command: &'static str,
    input: String,
}

#[derive(Serialize)]
struct LevyOutput {
    count: usize,
    levy: f64,
}

fn cmd_levy(a: LevyArgs) -> CliResult<()> {
    let f: LevyPartial = load_config(&a.config)?;
    let cfg = LevyConfig { command: "levy", input: need!(a.input, f.input, "--input") };
    echo_config(&cfg)?;
    let text = if cfg.input == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        buf
    } else {
        fs::read_to_string(&cfg.input)?
    };
    let samples: Vec<f64> = text
        .split_whitespace()
        .map(|t| t.parse::<f64>().map_err(|e| usage(format!("bad sample {t:?}: {e}"))))
        .collect::<CliResult<_>>()?;
    let levy = levy_distance_empirical(&samples, normal_cdf)?;
    let out = LevyOutput { count: samples.len(), levy };
    let json = serde_json::to_string_pretty(&out).map_err(|e| usage(e.to_string()))?;
    write_text(&a.out, &format!("{json}\n"))
}
