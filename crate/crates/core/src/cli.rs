//! The `lspnw` command line.
//!
//! Every subcommand shares one set of options. A `--config` file (TOML, or
//! JSON when the extension is `.json`) supplies the same keys in snake_case;
//! flags given on the command line win. Exit codes: 0 success, 1 usage or
//! input error, 2 estimation failure (empty window, boundary, signed weights).

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Deserializer, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::estimator::{conditional_cdf, conditional_mean, nw_weights, WeightVector};
use crate::harness::{
    algorithm1_outcome, algorithm2_outcome, convergence_study, fit_report, sigma_sweep, Bandwidth,
    EvalPoint, ExperimentConfig, ReplicationOutcome, DEFAULT_U_GRID, DESK_MC_RUNS, DESK_REPLICATIONS,
    DESK_SAMPLE_SIZES, PAPER_MC_RUNS, PAPER_REPLICATIONS, PAPER_SAMPLE_SIZES,
};
use crate::io::{self, Cell, ColumnSelector, Table};
use crate::kernels::{KernelFamily, KernelSpec};
use crate::measure::DiscreteMeasure;
use crate::simulate::{
    lag_embed, simulate, simulate_stationary_at, ProcessFamily, ProcessSpec, Series, DEFAULT_BURN_IN,
};

const DEFAULT_T: usize = 1000;
const DEFAULT_SIGMA: f64 = 0.1;
const DEFAULT_SWEEP_SIGMAS: [f64; 4] = [1.0, 0.1, 0.01, 0.001];
const DEFAULT_CUTS: [f64; 3] = [1.0 / 3.0, 2.0 / 3.0, 1.0];
const DEFAULT_QUAD_POINTS: usize = 4096;

#[derive(Debug, Parser)]
#[command(name = "lspnw", version, about = "Nadaraya-Watson conditional distributions for locally stationary series")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
enum CommandKind {
    Simulate,
    Estimate,
    Algo1,
    Algo2,
    Converge,
    Sweep,
    Fit,
    KernelsCheck,
}

#[derive(Debug, Subcommand)]
enum Command {
    #[command(about = "Simulate a series (one column `y`)")]
    Simulate(Settings),
    #[command(about = "Conditional CDF and mean at one time point")]
    Estimate(Settings),
    #[command(about = "Replicated synthetic experiment (W1 of averaged NW CDFs vs empirical)")]
    Algo1(Settings),
    #[command(about = "Replicated experiment on Gaussian-smoothed copies of one series")]
    Algo2(Settings),
    #[command(about = "Monte Carlo convergence study over sample sizes and a u grid")]
    Converge(Settings),
    #[command(about = "Smoothed-replication W1 over sigmas and leading-sample cuts")]
    Sweep(Settings),
    #[command(about = "In-sample conditional-mean fit with RMSE/MAE")]
    Fit(Settings),
    #[command(about = "Quadrature moments of every kernel family")]
    KernelsCheck(Settings),
}

impl Command {
    fn split(self) -> (CommandKind, Settings) {
        match self {
            Command::Simulate(s) => (CommandKind::Simulate, s),
            Command::Estimate(s) => (CommandKind::Estimate, s),
            Command::Algo1(s) => (CommandKind::Algo1, s),
            Command::Algo2(s) => (CommandKind::Algo2, s),
            Command::Converge(s) => (CommandKind::Converge, s),
            Command::Sweep(s) => (CommandKind::Sweep, s),
            Command::Fit(s) => (CommandKind::Fit, s),
            Command::KernelsCheck(s) => (CommandKind::KernelsCheck, s),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Options shared by all subcommands; also the schema of `--config` files.
#[derive(Debug, Clone, Default, PartialEq, clap::Args, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Settings {
    /// Synthetic process: tvar1-gauss, tvar2-gauss, tvar2-cauchy, tvtar1-gauss.
    #[arg(long)]
    pub process: Option<ProcessFamily>,
    /// Sample size(s); a comma list for `converge`.
    #[arg(long = "T", value_delimiter = ',')]
    #[serde(rename = "T", deserialize_with = "one_or_many")]
    pub t_len: Option<Vec<usize>>,
    /// Number of replications.
    #[arg(long = "L")]
    #[serde(rename = "L")]
    pub replications: Option<usize>,
    #[arg(long)]
    pub mc_runs: Option<usize>,
    /// Bandwidth exponent: h = T^(-xi).
    #[arg(long, conflicts_with = "h")]
    pub xi: Option<f64>,
    /// Fixed bandwidth.
    #[arg(long)]
    pub h: Option<f64>,
    /// Lag order of the covariate vector.
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub k_time: Option<KernelFamily>,
    #[arg(long)]
    pub k_space: Option<KernelFamily>,
    /// Evaluation time index (1-based).
    #[arg(long, conflicts_with = "u")]
    pub t: Option<usize>,
    /// Rescaled evaluation time; a comma list (the u grid) for `converge`.
    #[arg(long, value_delimiter = ',')]
    #[serde(deserialize_with = "one_or_many")]
    pub u: Option<Vec<f64>>,
    /// Smoothing noise level; a comma list for `sweep`.
    #[arg(long, value_delimiter = ',')]
    #[serde(deserialize_with = "one_or_many")]
    pub sigma: Option<Vec<f64>>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Use the large grid (T = 5000,10000,15000, L = 1000, 100 runs) as defaults.
    #[arg(long)]
    pub paper_scale: bool,
    #[arg(long)]
    pub force_boundary: bool,
    #[arg(long)]
    pub allow_signed_weights: bool,
    /// TOML or JSON file with defaults for any of these options.
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    /// Observed series (CSV) instead of a simulated one.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Column of `--input`, by header name or 0-based index.
    #[arg(long)]
    pub column: Option<String>,
    /// Fractions of the series kept by `sweep`.
    #[arg(long, value_delimiter = ',')]
    #[serde(deserialize_with = "one_or_many")]
    pub cuts: Option<Vec<f64>>,
    /// Conditioning lag vector for `estimate` (most recent first).
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    #[serde(deserialize_with = "one_or_many")]
    pub x: Option<Vec<f64>>,
    #[arg(long)]
    pub burn_in: Option<usize>,
    /// Simulate the stationary approximation frozen at this u.
    #[arg(long)]
    pub stationary: Option<f64>,
    #[arg(long)]
    pub quad_points: Option<usize>,
}

fn one_or_many<'de, D, T>(de: D) -> std::result::Result<Option<Vec<T>>, D::Error>
where
    D: Deserializer<'de>,
    T: Deserialize<'de>,
{
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum OneOrMany<T> {
        One(T),
        Many(Vec<T>),
    }
    Ok(Option::<OneOrMany<T>>::deserialize(de)?.map(|v| match v {
        OneOrMany::One(x) => vec![x],
        OneOrMany::Many(xs) => xs,
    }))
}

impl Settings {
    /// Fills every option missing here from `base`. The bandwidth (`xi`/`h`)
    /// and evaluation point (`t`/`u`) pairs are taken as a unit.
    pub fn overlay(self, base: Settings) -> Settings {
        let (xi, h) = if self.xi.is_some() || self.h.is_some() {
            (self.xi, self.h)
        } else {
            (base.xi, base.h)
        };
        let (t, u) = if self.t.is_some() || self.u.is_some() {
            (self.t, self.u)
        } else {
            (base.t, base.u)
        };
        Settings {
            process: self.process.or(base.process),
            t_len: self.t_len.or(base.t_len),
            replications: self.replications.or(base.replications),
            mc_runs: self.mc_runs.or(base.mc_runs),
            xi,
            h,
            d: self.d.or(base.d),
            k_time: self.k_time.or(base.k_time),
            k_space: self.k_space.or(base.k_space),
            t,
            u,
            sigma: self.sigma.or(base.sigma),
            seed: self.seed.or(base.seed),
            out: self.out.or(base.out),
            format: self.format.or(base.format),
            paper_scale: self.paper_scale || base.paper_scale,
            force_boundary: self.force_boundary || base.force_boundary,
            allow_signed_weights: self.allow_signed_weights || base.allow_signed_weights,
            config: self.config,
            input: self.input.or(base.input),
            column: self.column.or(base.column),
            cuts: self.cuts.or(base.cuts),
            x: self.x.or(base.x),
            burn_in: self.burn_in.or(base.burn_in),
            stationary: self.stationary.or(base.stationary),
            quad_points: self.quad_points.or(base.quad_points),
        }
    }

    pub fn load(path: &Path) -> Result<Settings> {
        let text = fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        let is_json = path
            .extension()
            .is_some_and(|e| e.eq_ignore_ascii_case("json"));
        let parsed: Settings = if is_json {
            serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?
        } else {
            toml::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?
        };
        if parsed.xi.is_some() && parsed.h.is_some() {
            return Err(Error::Input(format!(
                "{}: xi and h are mutually exclusive",
                path.display()
            )));
        }
        if parsed.t.is_some() && parsed.u.is_some() {
            return Err(Error::Input(format!(
                "{}: t and u are mutually exclusive",
                path.display()
            )));
        }
        Ok(parsed)
    }

    fn single_t(&self, default: usize) -> Result<usize> {
        match self.t_len.as_deref() {
            None => Ok(default),
            Some([t]) => Ok(*t),
            Some(ts) => Err(Error::Input(format!(
                "this command takes a single --T, got {} values",
                ts.len()
            ))),
        }
    }

    fn single_sigma(&self) -> Result<f64> {
        match self.sigma.as_deref() {
            None => Ok(DEFAULT_SIGMA),
            Some([s]) => Ok(*s),
            Some(ss) => Err(Error::Input(format!(
                "this command takes a single --sigma, got {} values",
                ss.len()
            ))),
        }
    }

    fn eval_point(&self) -> Result<EvalPoint> {
        match (self.t, self.u.as_deref()) {
            (Some(t), _) => Ok(EvalPoint::Index(t)),
            (None, None) => Ok(EvalPoint::Fraction(0.5)),
            (None, Some([u])) => Ok(EvalPoint::Fraction(*u)),
            (None, Some(us)) => Err(Error::Input(format!(
                "this command takes a single --u, got {} values",
                us.len()
            ))),
        }
    }

    fn process_family(&self) -> ProcessFamily {
        self.process.unwrap_or(ProcessFamily::GaussianTvAR1)
    }

    fn column(&self) -> Result<Option<ColumnSelector>> {
        self.column.as_deref().map(str::parse).transpose()
    }

    /// Records a fresh seed when none was given and tells the user.
    fn ensure_seed(&mut self) -> u64 {
        *self.seed.get_or_insert_with(|| {
            let seed = rand::random::<u64>();
            eprintln!("seed: {seed} (generated; pass --seed {seed} to reproduce)");
            seed
        })
    }

    /// Experiment configuration for a synthetic process, or for an observed
    /// series when `observed` is set.
    fn experiment(&self, t_len: usize, observed: bool) -> Result<ExperimentConfig> {
        let mut cfg = if observed {
            ExperimentConfig::for_series(t_len)
        } else {
            ExperimentConfig::for_process(self.process_family())
        };
        cfg.t_len = t_len;
        if let Some(d) = self.d {
            cfg.lag_order = d;
        }
        cfg.bandwidth = match (self.xi, self.h) {
            (Some(_), Some(_)) => return Err(Error::Input("--xi and --h are mutually exclusive".into())),
            (Some(xi), None) => Bandwidth::Exponent(xi),
            (None, Some(h)) => Bandwidth::Fixed(h),
            (None, None) if observed => Bandwidth::Exponent(0.2 / (cfg.lag_order as f64 + 1.0)),
            (None, None) => Bandwidth::Exponent(self.process_family().default_xi(cfg.lag_order)),
        };
        if let Some(k) = self.k_time {
            cfg.k_time = KernelSpec::new(k);
        }
        if let Some(k) = self.k_space {
            cfg.k_space = KernelSpec::new(k);
        }
        cfg.burn_in = self.burn_in.unwrap_or(DEFAULT_BURN_IN);
        cfg.replications = self.replications.unwrap_or(if self.paper_scale {
            PAPER_REPLICATIONS
        } else {
            DESK_REPLICATIONS
        });
        cfg.mc_runs = self.mc_runs.unwrap_or(if self.paper_scale { PAPER_MC_RUNS } else { DESK_MC_RUNS });
        cfg.t_eval = self.eval_point()?;
        cfg.sigma = if observed { Some(self.single_sigma()?) } else { None };
        cfg.seed = self.seed.unwrap_or(0);
        cfg.force_boundary = self.force_boundary;
        cfg.allow_signed_weights = self.allow_signed_weights;
        Ok(cfg)
    }

    /// The series from `--input`, or one simulated from the process.
    fn base_series(&mut self) -> Result<Series> {
        if let Some(path) = self.input.clone() {
            let column = self.column()?;
            return io::load_series_csv(&path, column.as_ref())
                .map_err(|e| e.context(format!("reading {}", path.display())));
        }
        let t_len = self.single_t(DEFAULT_T)?;
        let seed = self.ensure_seed();
        let spec = ProcessSpec::new(self.process_family()).with_burn_in(self.burn_in.unwrap_or(DEFAULT_BURN_IN));
        simulate(&spec, t_len, seed)
    }
}

/// A finished command: its table and a summary for the JSON meta block.
struct Report {
    table: Table,
    result: Value,
    experiment: Option<ExperimentConfig>,
}

/// Parses `argv` (program name first), runs the command and returns the exit code.
pub fn run_cli<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_computation() {
                2
            } else {
                1
            }
        }
    }
}

fn execute(cli: Cli) -> Result<()> {
    let (kind, flags) = cli.command.split();
    let mut settings = match &flags.config {
        Some(path) => flags.clone().overlay(Settings::load(path)?),
        None => flags,
    };
    let report = match kind {
        CommandKind::Simulate => cmd_simulate(&mut settings)?,
        CommandKind::Estimate => cmd_estimate(&mut settings)?,
        CommandKind::Algo1 => cmd_algo1(&mut settings)?,
        CommandKind::Algo2 => cmd_algo2(&mut settings)?,
        CommandKind::Converge => cmd_converge(&mut settings)?,
        CommandKind::Sweep => cmd_sweep(&mut settings)?,
        CommandKind::Fit => cmd_fit(&mut settings)?,
        CommandKind::KernelsCheck => cmd_kernels_check(&settings)?,
    };

    let text = match settings.format.unwrap_or_default() {
        Format::Csv => report.table.to_csv(),
        Format::Json => {
            let meta = json!({
                "command": kind,
                "version": env!("CARGO_PKG_VERSION"),
                "seed": settings.seed,
                "config": settings,
                "experiment": report.experiment,
                "result": report.result,
            });
            io::json_report(&meta, &report.table.to_json_rows())?
        }
    };
    io::write_output(settings.out.as_deref(), &text)
}

fn cmd_simulate(s: &mut Settings) -> Result<Report> {
    let t_len = s.single_t(DEFAULT_T)?;
    let seed = s.ensure_seed();
    let family = s.process_family();
    let spec = ProcessSpec::new(family).with_burn_in(s.burn_in.unwrap_or(DEFAULT_BURN_IN));
    let series = match s.stationary {
        Some(u) => simulate_stationary_at(&spec, u, t_len, seed)?,
        None => simulate(&spec, t_len, seed)?,
    };
    Ok(Report {
        table: io::series_table(&series),
        result: json!({ "process": family, "T": t_len, "stationary_u": s.stationary }),
        experiment: None,
    })
}

/// Atoms `(y, weight)` sorted by `y` with their running sum. Signed weights
/// are listed as they are; the running sum is then not a distribution.
fn weighted_atoms(w: &WeightVector, responses: &[f64]) -> Result<Table> {
    let mut table = Table::new(&["y", "weight", "cdf"]);
    if w.is_signed() {
        let mut atoms: Vec<(f64, f64)> = responses
            .iter()
            .copied()
            .zip(w.weights().iter().copied())
            .filter(|(_, w)| *w != 0.0)
            .collect();
        atoms.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut acc = 0.0;
        for (y, wt) in atoms {
            acc += wt;
            table.push(vec![y.into(), wt.into(), acc.into()]);
        }
    } else {
        let cdf = conditional_cdf(w, responses)?;
        let measure: DiscreteMeasure = cdf.to_measure();
        for ((y, wt), f) in measure.support().iter().zip(measure.weights()).zip(cdf.values()) {
            table.push(vec![(*y).into(), (*wt).into(), (*f).into()]);
        }
    }
    Ok(table)
}

fn cmd_estimate(s: &mut Settings) -> Result<Report> {
    let observed = s.input.is_some();
    let series = s.base_series()?;
    let cfg = s.experiment(series.len(), observed)?;
    let data = lag_embed(&series, cfg.lag_order)?;
    let t = cfg.t_eval.index_for(series.len())?;
    let params = cfg.nw_params(series.len())?;
    let x = match &s.x {
        Some(x) => x.clone(),
        None => {
            let row = data.position_of(t).ok_or_else(|| {
                Error::Input(format!("t={t} has no complete lag vector; pass --x or a later --t"))
            })?;
            data.covariate(row).to_vec()
        }
    };
    let w = nw_weights(&data, t, &x, &params)?;
    let mean = conditional_mean(&w, data.responses())?;
    Ok(Report {
        table: weighted_atoms(&w, data.responses())?,
        result: json!({
            "t": t,
            "u": t as f64 / series.len() as f64,
            "h": params.h,
            "x": x,
            "mean": mean,
            "signed": w.is_signed(),
        }),
        experiment: Some(cfg),
    })
}

/// Both CDFs evaluated on the union of their jump points.
fn outcome_table(o: &ReplicationOutcome) -> Table {
    let mut points: Vec<f64> = o.estimated.jumps().iter().chain(o.empirical.jumps()).copied().collect();
    points.sort_by(f64::total_cmp);
    points.dedup();
    let mut table = Table::new(&["y", "estimated", "empirical"]);
    for y in points {
        table.push(vec![y.into(), o.estimated.eval(y).into(), o.empirical.eval(y).into()]);
    }
    table
}

fn outcome_result(o: &ReplicationOutcome, t_len: usize, cfg: &ExperimentConfig) -> Value {
    eprintln!("W1 = {}", io::format_float(o.w1));
    json!({
        "T": t_len,
        "t": o.t_index,
        "u": o.t_index as f64 / t_len as f64,
        "h": o.h,
        "L": cfg.replications,
        "w1": o.w1,
    })
}

fn cmd_algo1(s: &mut Settings) -> Result<Report> {
    let t_len = s.single_t(DEFAULT_T)?;
    s.ensure_seed();
    let cfg = s.experiment(t_len, false)?;
    let outcome = algorithm1_outcome(&cfg)?;
    Ok(Report {
        table: outcome_table(&outcome),
        result: outcome_result(&outcome, t_len, &cfg),
        experiment: Some(cfg),
    })
}

fn cmd_algo2(s: &mut Settings) -> Result<Report> {
    let base = s.base_series()?;
    s.ensure_seed();
    let cfg = s.experiment(base.len(), true)?;
    let outcome = algorithm2_outcome(&base, &cfg)?;
    Ok(Report {
        table: outcome_table(&outcome),
        result: outcome_result(&outcome, base.len(), &cfg),
        experiment: Some(cfg),
    })
}

fn cmd_converge(s: &mut Settings) -> Result<Report> {
    s.ensure_seed();
    let sizes = s.t_len.clone().unwrap_or_else(|| {
        if s.paper_scale {
            PAPER_SAMPLE_SIZES.to_vec()
        } else {
            DESK_SAMPLE_SIZES.to_vec()
        }
    });
    if s.t.is_some() {
        return Err(Error::Input("converge evaluates on a u grid; use --u, not --t".into()));
    }
    let grid = s.u.clone().unwrap_or_else(|| DEFAULT_U_GRID.to_vec());
    // The grid is passed separately; the config's own point is unused.
    let mut cfg = Settings { u: None, ..s.clone() }.experiment(sizes[0], false)?;
    cfg.t_eval = EvalPoint::Fraction(grid[0]);
    let report = convergence_study(&cfg, &sizes, &grid)?;
    Ok(Report {
        table: io::convergence_table(&report),
        result: json!({ "sample_sizes": report.sample_sizes, "u_grid": report.u_grid }),
        experiment: Some(report.meta),
    })
}

fn cmd_sweep(s: &mut Settings) -> Result<Report> {
    let observed = s.input.is_some();
    let base = s.base_series()?;
    s.ensure_seed();
    let sigmas = s.sigma.clone().unwrap_or_else(|| DEFAULT_SWEEP_SIGMAS.to_vec());
    let cuts = s.cuts.clone().unwrap_or_else(|| DEFAULT_CUTS.to_vec());
    let cfg = Settings { sigma: None, ..s.clone() }.experiment(base.len(), true)?;
    let report = sigma_sweep(&base, &sigmas, &cuts, &cfg)?;
    let mut table = Table::new(&["sigma", "fraction", "S", "t", "h", "w1"]);
    for r in &report.rows {
        table.push(vec![
            r.sigma.into(),
            r.fraction.into(),
            r.cut.into(),
            r.t.into(),
            r.h.into(),
            r.w1.into(),
        ]);
    }
    Ok(Report {
        table,
        result: json!({ "T": base.len(), "observed": observed }),
        experiment: Some(report.meta),
    })
}

fn cmd_fit(s: &mut Settings) -> Result<Report> {
    let observed = s.input.is_some();
    let series = s.base_series()?;
    let cfg = s.experiment(series.len(), observed)?;
    let fit = fit_report(&series, &cfg)?;
    let truth_rmse = match (observed, cfg.lag_order == s.process_family().lag_order()) {
        (false, true) => Some(fit.rmse_against_truth(s.process_family())?),
        _ => None,
    };
    eprintln!(
        "RMSE = {}, MAE = {}, {} points",
        io::format_float(fit.rmse),
        io::format_float(fit.mae),
        fit.fitted.len()
    );
    let mut table = Table::new(&["t", "u", "y", "fitted", "density"]);
    for p in &fit.fitted {
        table.push(vec![p.t.into(), p.u.into(), p.y.into(), p.fitted.into(), p.density.into()]);
    }
    Ok(Report {
        table,
        result: json!({
            "T": series.len(),
            "h": fit.h,
            "rmse": fit.rmse,
            "mae": fit.mae,
            "rmse_vs_truth": truth_rmse,
            "missing": fit.missing,
            "low_density": fit.low_density,
        }),
        experiment: Some(cfg),
    })
}

fn cmd_kernels_check(s: &Settings) -> Result<Report> {
    let quad_points = s.quad_points.unwrap_or(DEFAULT_QUAD_POINTS);
    let mut table = Table::new(&["kernel", "m0", "m1", "m2", "expected_m2"]);
    for family in KernelFamily::ALL {
        let (m0, m1, m2) = KernelSpec::new(family).verify_moments(quad_points)?;
        table.push(vec![
            Cell::from(family.name()),
            m0.into(),
            m1.into(),
            m2.into(),
            family.second_moment().into(),
        ]);
    }
    Ok(Report {
        table,
        result: json!({ "quad_points": quad_points }),
        experiment: None,
    })
}
