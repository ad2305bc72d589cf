//! Experiment drivers: replicated NW-vs-empirical W1 (synthetic and
//! Gaussian-smoothed real series), the Monte Carlo convergence study, the
//! conditional-mean fit report and the σ / sample-size sweep.
//!
//! Every output is a pure function of the configuration and its seed.
//! Replications and Monte Carlo runs draw from seeds derived with
//! [`derive_seed`], and all reductions happen in index order.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimator::{
    conditional_cdf, conditional_mean, density_diagnostic, nw_weights_at_own_lag, NwParams,
    DEFAULT_DENSITY_FLOOR,
};
use crate::kernels::{KernelFamily, KernelSpec};
use crate::measure::{DiscreteMeasure, StepCdf};
use crate::otmetrics::w1_cdf;
use crate::rng::derive_seed;
use crate::simulate::{
    gaussian_smooth_one, lag_embed, simulate, true_conditional_mean, ProcessFamily, ProcessSpec,
    Series, DEFAULT_BURN_IN,
};

pub const DESK_SAMPLE_SIZES: [usize; 3] = [500, 1000, 2000];
pub const DESK_REPLICATIONS: usize = 200;
pub const DESK_MC_RUNS: usize = 20;
pub const PAPER_SAMPLE_SIZES: [usize; 3] = [5000, 10000, 15000];
pub const PAPER_REPLICATIONS: usize = 1000;
pub const PAPER_MC_RUNS: usize = 100;
pub const DEFAULT_U_GRID: [f64; 5] = [0.3, 0.4, 0.5, 0.6, 0.7];

/// `h = T^(-ξ)`.
pub fn bandwidth_from_exponent(t_len: usize, xi: f64) -> Result<f64> {
    if t_len < 2 {
        return Err(Error::input(format!("T must be at least 2, got {t_len}")));
    }
    if !(xi > 0.0 && xi < 1.0) {
        return Err(Error::input(format!("bandwidth exponent must lie in (0, 1), got {xi}")));
    }
    Ok((t_len as f64).powf(-xi))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bandwidth {
    /// `h = T^(-ξ)`, recomputed for every sample size.
    Exponent(f64),
    Fixed(f64),
}

impl Bandwidth {
    pub fn resolve(&self, t_len: usize) -> Result<f64> {
        match *self {
            Bandwidth::Exponent(xi) => bandwidth_from_exponent(t_len, xi),
            Bandwidth::Fixed(h) if h > 0.0 && h.is_finite() => Ok(h),
            Bandwidth::Fixed(h) => Err(Error::input(format!("bandwidth must be positive, got {h}"))),
        }
    }
}

/// Where the conditional law is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EvalPoint {
    /// 1-based time index.
    Index(usize),
    /// Rescaled time `u`; the index is `round(u T)`.
    Fraction(f64),
}

impl EvalPoint {
    pub fn index_for(&self, t_len: usize) -> Result<usize> {
        match *self {
            EvalPoint::Index(t) if (1..=t_len).contains(&t) => Ok(t),
            EvalPoint::Index(t) => Err(Error::input(format!("t={t} outside 1..={t_len}"))),
            EvalPoint::Fraction(u) if u > 0.0 && u <= 1.0 => {
                Ok(((u * t_len as f64).round() as usize).clamp(1, t_len))
            }
            EvalPoint::Fraction(u) => Err(Error::input(format!("u={u} outside (0, 1]"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub process: Option<ProcessFamily>,
    pub burn_in: usize,
    /// Sample size `T` of each replication.
    pub t_len: usize,
    pub t_eval: EvalPoint,
    /// Number of replications `L`.
    pub replications: usize,
    pub mc_runs: usize,
    pub k_time: KernelSpec,
    pub k_space: KernelSpec,
    pub bandwidth: Bandwidth,
    /// Lag order `d` of the covariate vector.
    pub lag_order: usize,
    pub sigma: Option<f64>,
    pub seed: u64,
    pub force_boundary: bool,
    pub allow_signed_weights: bool,
}

impl ExperimentConfig {
    /// Desk-scale defaults for a synthetic process: uniform time kernel,
    /// Gaussian space kernel, the family's lag order and bandwidth exponent.
    pub fn for_process(family: ProcessFamily) -> Self {
        let d = family.lag_order();
        ExperimentConfig {
            process: Some(family),
            burn_in: DEFAULT_BURN_IN,
            t_len: 1000,
            t_eval: EvalPoint::Fraction(0.5),
            replications: DESK_REPLICATIONS,
            mc_runs: DESK_MC_RUNS,
            k_time: KernelSpec::new(KernelFamily::Uniform),
            k_space: KernelSpec::new(KernelFamily::Gaussian),
            bandwidth: Bandwidth::Exponent(family.default_xi(d)),
            lag_order: d,
            sigma: None,
            seed: 0,
            force_boundary: false,
            allow_signed_weights: false,
        }
    }

    /// Defaults for an observed series: `d = 1`, `ξ = 0.2 / (d + 1)`, σ = 0.1.
    pub fn for_series(t_len: usize) -> Self {
        ExperimentConfig {
            process: None,
            t_len,
            sigma: Some(0.1),
            bandwidth: Bandwidth::Exponent(0.1),
            lag_order: 1,
            ..Self::for_process(ProcessFamily::GaussianTvAR1)
        }
    }

    pub fn h_for(&self, t_len: usize) -> Result<f64> {
        self.bandwidth.resolve(t_len)
    }

    pub fn nw_params(&self, t_len: usize) -> Result<NwParams> {
        Ok(NwParams::new(self.k_time, self.k_space, self.h_for(t_len)?)
            .force_boundary(self.force_boundary)
            .allow_signed_weights(self.allow_signed_weights))
    }

    pub fn process_spec(&self) -> Result<ProcessSpec> {
        let family = self
            .process
            .ok_or_else(|| Error::input("this experiment needs a synthetic process"))?;
        Ok(ProcessSpec::new(family).with_burn_in(self.burn_in))
    }
}

/// Both CDFs compared by a replicated experiment and their W1 distance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplicationOutcome {
    pub t_index: usize,
    pub h: f64,
    /// `F̂_t^L`, the average of the per-replication NW CDFs.
    pub estimated: StepCdf,
    /// `F_t^L`, the empirical CDF of `Y_t` across replications.
    pub empirical: StepCdf,
    pub w1: f64,
}

/// Generic replicated estimate: replication `l` comes from `generate(l)`,
/// its NW CDF at `t` is conditioned on its own lag vector `X_t^(l)`.
pub fn run_replicated<G>(
    t_len: usize,
    t_index: usize,
    lag_order: usize,
    params: &NwParams,
    replications: usize,
    generate: G,
) -> Result<ReplicationOutcome>
where
    G: Fn(usize) -> Result<Series> + Sync,
{
    if replications == 0 {
        return Err(Error::input("need at least one replication"));
    }
    if t_index <= lag_order || t_index > t_len {
        return Err(Error::input(format!(
            "t={t_index} must lie in {}..={t_len} to have a full lag vector",
            lag_order + 1
        )));
    }
    params.check_interior(t_index as f64 / t_len as f64)?;

    let per_rep = (0..replications)
        .into_par_iter()
        .map(|l| {
            let run = || -> Result<(StepCdf, f64)> {
                let series = generate(l)?;
                if series.len() != t_len {
                    return Err(Error::input(format!(
                        "generator returned {} values, expected {t_len}",
                        series.len()
                    )));
                }
                let data = lag_embed(&series, lag_order)?;
                let w = nw_weights_at_own_lag(&data, t_index, params)?;
                Ok((conditional_cdf(&w, data.responses())?, series.at(t_index)))
            };
            run().map_err(|e| e.context(format!("replication {}", l + 1)))
        })
        .collect::<Result<Vec<_>>>()?;

    let (cdfs, targets): (Vec<StepCdf>, Vec<f64>) = per_rep.into_iter().unzip();
    let estimated = StepCdf::average(&cdfs)?;
    let empirical = DiscreteMeasure::empirical(&targets)?.to_cdf();
    let w1 = w1_cdf(&estimated, &empirical);
    Ok(ReplicationOutcome {
        t_index,
        h: params.h,
        estimated,
        empirical,
        w1,
    })
}

/// Synthetic replications of the configured process.
pub fn algorithm1_outcome(cfg: &ExperimentConfig) -> Result<ReplicationOutcome> {
    let spec = cfg.process_spec()?;
    if cfg.replications < 2 {
        return Err(Error::input("the synthetic experiment needs L >= 2"));
    }
    let t_index = cfg.t_eval.index_for(cfg.t_len)?;
    let params = cfg.nw_params(cfg.t_len)?;
    run_replicated(cfg.t_len, t_index, cfg.lag_order, &params, cfg.replications, |l| {
        simulate(&spec, cfg.t_len, derive_seed(cfg.seed, l as u64))
    })
}

pub fn run_algorithm1(cfg: &ExperimentConfig) -> Result<f64> {
    Ok(algorithm1_outcome(cfg)?.w1)
}

/// Gaussian-smoothed replications of an observed series.
pub fn algorithm2_outcome(base: &Series, cfg: &ExperimentConfig) -> Result<ReplicationOutcome> {
    let sigma = cfg
        .sigma
        .ok_or_else(|| Error::input("the smoothed experiment needs sigma"))?;
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::input(format!("sigma must be positive, got {sigma}")));
    }
    let t_len = base.len();
    let t_index = cfg.t_eval.index_for(t_len)?;
    let params = cfg.nw_params(t_len)?;
    run_replicated(t_len, t_index, cfg.lag_order, &params, cfg.replications, |l| {
        gaussian_smooth_one(base, sigma, derive_seed(cfg.seed, l as u64))
    })
}

pub fn run_algorithm2(base: &Series, cfg: &ExperimentConfig) -> Result<f64> {
    Ok(algorithm2_outcome(base, cfg)?.w1)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    #[serde(rename = "T")]
    pub t_len: usize,
    pub u: f64,
    pub h: f64,
    pub mean_w1: f64,
    pub std_w1: f64,
    #[serde(rename = "L")]
    pub replications: usize,
    pub mc_runs: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub rows: Vec<ConvergenceRow>,
    pub meta: ExperimentConfig,
    pub sample_sizes: Vec<usize>,
    pub u_grid: Vec<f64>,
}

/// Seed of Monte Carlo run `run` in cell `(t_len, u_pos)`.
pub fn convergence_run_seed(seed: u64, t_len: usize, u_pos: usize, run: usize) -> u64 {
    derive_seed(derive_seed(derive_seed(seed, t_len as u64), u_pos as u64), run as u64)
}

/// Mean and sample standard deviation.
fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// `mc_runs` independent replicated experiments per `(T, u)` cell; rows sorted by `(T, u)`.
pub fn convergence_study(
    cfg: &ExperimentConfig,
    sample_sizes: &[usize],
    u_grid: &[f64],
) -> Result<ConvergenceReport> {
    let mut sizes = sample_sizes.to_vec();
    sizes.sort_unstable();
    sizes.dedup();
    if sizes.len() < 2 {
        return Err(Error::input("a convergence study needs at least two sample sizes"));
    }
    if cfg.mc_runs < 2 {
        return Err(Error::input("a convergence study needs mc_runs >= 2"));
    }
    if u_grid.is_empty() {
        return Err(Error::input("empty u grid"));
    }
    let mut grid = u_grid.to_vec();
    grid.sort_by(f64::total_cmp);
    let spec = cfg.process_spec()?;

    let mut rows = Vec::with_capacity(sizes.len() * grid.len());
    for &t_len in &sizes {
        let params = cfg.nw_params(t_len)?;
        for (u_pos, &u) in grid.iter().enumerate() {
            let t_index = EvalPoint::Fraction(u).index_for(t_len)?;
            let values = (0..cfg.mc_runs)
                .into_par_iter()
                .map(|run| {
                    let seed = convergence_run_seed(cfg.seed, t_len, u_pos, run);
                    run_replicated(t_len, t_index, cfg.lag_order, &params, cfg.replications, |l| {
                        simulate(&spec, t_len, derive_seed(seed, l as u64))
                    })
                    .map(|o| o.w1)
                    .map_err(|e| e.context(format!("T={t_len}, u={u}, run {}", run + 1)))
                })
                .collect::<Result<Vec<f64>>>()?;
            let (mean_w1, std_w1) = mean_std(&values);
            rows.push(ConvergenceRow {
                t_len,
                u,
                h: params.h,
                mean_w1,
                std_w1,
                replications: cfg.replications,
                mc_runs: cfg.mc_runs,
            });
        }
    }
    Ok(ConvergenceReport {
        rows,
        meta: cfg.clone(),
        sample_sizes: sizes,
        u_grid: grid,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FittedPoint {
    pub t: usize,
    pub u: f64,
    pub y: f64,
    /// Lag vector `X_t`, most recent first.
    pub x: Vec<f64>,
    pub fitted: f64,
    /// Normalized weight denominator at this point.
    pub density: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub rmse: f64,
    pub mae: f64,
    pub h: f64,
    pub fitted: Vec<FittedPoint>,
    /// Indices skipped because their kernel window was empty.
    pub missing: Vec<usize>,
    /// Number of fitted points whose density diagnostic fell below the floor.
    pub low_density: usize,
}

impl FitReport {
    /// RMSE of the fitted values against a reference mean `m(u, x)`.
    pub fn rmse_against(&self, truth: impl Fn(f64, &[f64]) -> Result<f64>) -> Result<f64> {
        if self.fitted.is_empty() {
            return Err(Error::input("no fitted points"));
        }
        let mut sq = 0.0;
        for p in &self.fitted {
            let e = p.fitted - truth(p.u, &p.x)?;
            sq += e * e;
        }
        Ok((sq / self.fitted.len() as f64).sqrt())
    }

    /// RMSE against the true conditional mean of a synthetic family.
    pub fn rmse_against_truth(&self, family: ProcessFamily) -> Result<f64> {
        self.rmse_against(|u, x| true_conditional_mean(family, u, x))
    }
}

/// In-sample NW fit `m̂(t/T, X_t)` at every `t` with `t/T ∈ I_h`.
pub fn fit_report(series: &Series, cfg: &ExperimentConfig) -> Result<FitReport> {
    let t_len = series.len();
    let data = lag_embed(series, cfg.lag_order)?;
    let params = cfg.nw_params(t_len)?;
    let candidates: Vec<usize> = data
        .times()
        .iter()
        .copied()
        .filter(|&t| params.check_interior(t as f64 / t_len as f64).is_ok())
        .collect();
    if candidates.is_empty() {
        let (lower, upper) = params.interior();
        return Err(Error::BoundaryRegion {
            u: 0.5,
            lower,
            upper,
        }
        .context("no time index of the series lies in the interior region"));
    }

    let results = candidates
        .par_iter()
        .map(|&t| {
            let row = data.position_of(t).expect("candidate taken from the data");
            let x = data.covariate(row);
            match nw_weights_at_own_lag(&data, t, &params) {
                Ok(w) => {
                    let fitted = conditional_mean(&w, data.responses())?;
                    let density = density_diagnostic(&data, t, x, &params)?;
                    Ok(Some(FittedPoint {
                        t,
                        u: t as f64 / t_len as f64,
                        y: data.response(row),
                        x: x.to_vec(),
                        fitted,
                        density,
                    }))
                }
                Err(Error::EmptyNeighborhood { .. }) => Ok(None),
                Err(e) => Err(e.context(format!("t={t}"))),
            }
        })
        .collect::<Result<Vec<Option<FittedPoint>>>>()?;

    let mut fitted = Vec::with_capacity(results.len());
    let mut missing = Vec::new();
    for (t, r) in candidates.iter().zip(results) {
        match r {
            Some(p) => fitted.push(p),
            None => missing.push(*t),
        }
    }
    if fitted.is_empty() {
        return Err(Error::EmptyNeighborhood {
            t_index: candidates[0],
            h: params.h,
        }
        .context("every interior point has an empty kernel window"));
    }
    let n = fitted.len() as f64;
    let rmse = (fitted.iter().map(|p| (p.y - p.fitted).powi(2)).sum::<f64>() / n).sqrt();
    let mae = fitted.iter().map(|p| (p.y - p.fitted).abs()).sum::<f64>() / n;
    let low_density = fitted.iter().filter(|p| p.density < DEFAULT_DENSITY_FLOOR).count();
    Ok(FitReport {
        rmse,
        mae,
        h: params.h,
        fitted,
        missing,
        low_density,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub sigma: f64,
    pub fraction: f64,
    /// Number of leading observations kept.
    #[serde(rename = "S")]
    pub cut: usize,
    pub t: usize,
    pub h: f64,
    pub w1: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    pub meta: ExperimentConfig,
}

/// Smoothed-replication W1 on the first `⌊fraction · T⌋` observations,
/// for every `(σ, fraction)` pair in the given order.
pub fn sigma_sweep(
    base: &Series,
    sigmas: &[f64],
    cut_fractions: &[f64],
    cfg: &ExperimentConfig,
) -> Result<SweepReport> {
    if sigmas.is_empty() || cut_fractions.is_empty() {
        return Err(Error::input("sigma sweep needs at least one sigma and one cut"));
    }
    if let Some(s) = sigmas.iter().find(|s| !(**s > 0.0 && s.is_finite())) {
        return Err(Error::input(format!("sigma must be positive, got {s}")));
    }
    if let Some(f) = cut_fractions.iter().find(|f| !(**f > 0.0 && **f <= 1.0)) {
        return Err(Error::input(format!("cut fraction must lie in (0, 1], got {f}")));
    }
    let mut rows = Vec::with_capacity(sigmas.len() * cut_fractions.len());
    for &sigma in sigmas {
        for &fraction in cut_fractions {
            let cut = (fraction * base.len() as f64).floor() as usize;
            let run = || -> Result<SweepRow> {
                let truncated = base.truncated(cut)?;
                let sub = ExperimentConfig {
                    sigma: Some(sigma),
                    t_len: cut,
                    ..cfg.clone()
                };
                let outcome = algorithm2_outcome(&truncated, &sub)?;
                Ok(SweepRow {
                    sigma,
                    fraction,
                    cut,
                    t: outcome.t_index,
                    h: outcome.h,
                    w1: outcome.w1,
                })
            };
            rows.push(run().map_err(|e| e.context(format!("sigma={sigma}, S={cut}")))?);
        }
    }
    Ok(SweepReport {
        rows,
        meta: cfg.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simulate::{simulate_with_noise, ZeroNoise};

    #[test]
    fn bandwidth_rule() {
        assert!((bandwidth_from_exponent(10_000, 0.1).unwrap() - 0.398_107_170_553_497_3).abs() < 1e-12);
        assert_eq!(bandwidth_from_exponent(1024, 0.5).unwrap(), 0.03125);
        assert!(bandwidth_from_exponent(100, 0.0).is_err());
        assert!(bandwidth_from_exponent(100, 1.0).is_err());
        assert!(bandwidth_from_exponent(1, 0.5).is_err());
    }

    #[test]
    fn eval_points() {
        assert_eq!(EvalPoint::Fraction(0.5).index_for(1000).unwrap(), 500);
        assert_eq!(EvalPoint::Index(7).index_for(10).unwrap(), 7);
        assert!(EvalPoint::Index(11).index_for(10).is_err());
        assert!(EvalPoint::Fraction(0.0).index_for(10).is_err());
    }

    #[test]
    fn zero_noise_replications_agree() {
        let spec = ProcessSpec::new(ProcessFamily::GaussianTvAR1);
        let params = NwParams::new(
            KernelSpec::new(KernelFamily::Uniform),
            KernelSpec::new(KernelFamily::Gaussian),
            0.2,
        );
        let out = run_replicated(200, 100, 1, &params, 5, |_| {
            simulate_with_noise(&spec, 200, &mut ZeroNoise)
        })
        .unwrap();
        assert!(out.w1.abs() < 1e-10);
    }

    #[test]
    fn boundary_is_refused_without_force() {
        let mut cfg = ExperimentConfig::for_process(ProcessFamily::GaussianTvAR1);
        cfg.t_len = 300;
        cfg.replications = 3;
        cfg.t_eval = EvalPoint::Fraction(0.05);
        let err = run_algorithm1(&cfg).unwrap_err();
        assert!(matches!(err, Error::BoundaryRegion { .. }), "{err}");
        cfg.force_boundary = true;
        assert!(run_algorithm1(&cfg).is_ok());
    }

    #[test]
    fn errors_carry_replication_context() {
        let params = NwParams::new(
            KernelSpec::new(KernelFamily::Uniform),
            KernelSpec::new(KernelFamily::Uniform),
            0.3,
        );
        // The own lag vector always matches itself, so the window is never
        // empty here; a short replication is the failure instead.
        let err = run_replicated(100, 50, 1, &params, 3, |l| {
            Series::new(vec![0.0; if l == 1 { 99 } else { 100 }])
        })
        .unwrap_err();
        assert!(err.to_string().contains("replication 2"), "{err}");
        assert!(!err.is_computation());
    }

    #[test]
    fn study_preconditions_and_shape() {
        let mut cfg = ExperimentConfig::for_process(ProcessFamily::GaussianTvAR1);
        cfg.replications = 4;
        cfg.mc_runs = 2;
        cfg.bandwidth = Bandwidth::Fixed(0.2);
        assert!(convergence_study(&cfg, &[200], &[0.5]).is_err());
        let report = convergence_study(&cfg, &[300, 200], &[0.6, 0.4, 0.5]).unwrap();
        assert_eq!(report.rows.len(), 6);
        let keys: Vec<_> = report.rows.iter().map(|r| (r.t_len, r.u)).collect();
        assert_eq!(keys[0], (200, 0.4));
        assert_eq!(keys[5], (300, 0.6));
        assert!(report.rows.iter().all(|r| r.std_w1 >= 0.0));
        cfg.mc_runs = 1;
        assert!(convergence_study(&cfg, &[200, 300], &[0.5]).is_err());
    }

    #[test]
    fn constant_series_fits_exactly() {
        let s = Series::new(vec![2.5; 400]).unwrap();
        let mut cfg = ExperimentConfig::for_series(400);
        cfg.bandwidth = Bandwidth::Fixed(0.1);
        let fit = fit_report(&s, &cfg).unwrap();
        assert!(fit.rmse < 1e-12 && fit.mae < 1e-12);
        assert!(fit.missing.is_empty());
        assert!(fit.fitted.iter().all(|p| p.u >= 0.1 && p.u <= 0.9));
    }

    #[test]
    fn sweep_shape() {
        let base = simulate(&ProcessSpec::new(ProcessFamily::GaussianTvAR1), 600, 1).unwrap();
        let mut cfg = ExperimentConfig::for_series(600);
        cfg.replications = 5;
        cfg.bandwidth = Bandwidth::Fixed(0.2);
        let r = sigma_sweep(&base, &[1.0, 0.1], &[0.5, 1.0], &cfg).unwrap();
        assert_eq!(r.rows.len(), 4);
        assert_eq!(r.rows[0].cut, 300);
        assert_eq!(r.rows[0].t, 150);
        assert!(sigma_sweep(&base, &[0.0], &[1.0], &cfg).is_err());
        assert!(sigma_sweep(&base, &[1.0], &[1.5], &cfg).is_err());

        let single = sigma_sweep(&base, &[0.5], &[1.0], &cfg).unwrap();
        let direct = run_algorithm2(&base, &ExperimentConfig { sigma: Some(0.5), ..cfg.clone() }).unwrap();
        assert_eq!(single.rows[0].w1, direct);
    }
}
