//! Synthetic locally stationary processes and replication of observed series.
//!
//! All four models share the recursion `Y_t = m*(t/T, X_t) + ε_t` where
//! `X_t = (Y_{t-1}, ..., Y_{t-d})` and the coefficient functions are
//! evaluated at rescaled time.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::{Open01, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{derive_seed, stream, StreamRng};

pub const DEFAULT_BURN_IN: usize = 200;

/// A univariate sample path `Y_1..Y_T`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Series {
    values: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Series {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::input(format!(
                "a series needs at least 2 values, got {}",
                values.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::input(format!("series value at t={} is not finite", i + 1)));
        }
        Ok(Series {
            values,
            name: None,
            seed: None,
        })
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `Y_t` for a 1-based index.
    pub fn at(&self, t: usize) -> f64 {
        self.values[t - 1]
    }

    /// Rescaled time `t / T`.
    pub fn rescaled(&self, t: usize) -> f64 {
        t as f64 / self.values.len() as f64
    }

    /// The first `len` observations.
    pub fn truncated(&self, len: usize) -> Result<Series> {
        let mut s = Series::new(self.values[..len.min(self.len())].to_vec())?;
        s.name = self.name.clone();
        s.seed = self.seed;
        Ok(s)
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ProcessFamily {
    #[serde(rename = "tvar1-gauss")]
    GaussianTvAR1,
    #[serde(rename = "tvar2-gauss")]
    GaussianTvAR2,
    #[serde(rename = "tvar2-cauchy")]
    CauchyTvAR2,
    #[serde(rename = "tvtar1-gauss")]
    GaussianTvTAR1,
}

impl ProcessFamily {
    pub const ALL: [ProcessFamily; 4] = [
        ProcessFamily::GaussianTvAR1,
        ProcessFamily::GaussianTvAR2,
        ProcessFamily::CauchyTvAR2,
        ProcessFamily::GaussianTvTAR1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProcessFamily::GaussianTvAR1 => "tvar1-gauss",
            ProcessFamily::GaussianTvAR2 => "tvar2-gauss",
            ProcessFamily::CauchyTvAR2 => "tvar2-cauchy",
            ProcessFamily::GaussianTvTAR1 => "tvtar1-gauss",
        }
    }

    /// Number of lags the conditional mean depends on.
    pub fn lag_order(self) -> usize {
        match self {
            ProcessFamily::GaussianTvAR1 | ProcessFamily::GaussianTvTAR1 => 1,
            ProcessFamily::GaussianTvAR2 | ProcessFamily::CauchyTvAR2 => 2,
        }
    }

    /// Default bandwidth exponent numerator: ξ = c / (d + 1).
    pub fn default_xi(self, d: usize) -> f64 {
        let c = match self {
            ProcessFamily::GaussianTvAR1 | ProcessFamily::GaussianTvTAR1 => 0.2,
            ProcessFamily::GaussianTvAR2 | ProcessFamily::CauchyTvAR2 => 0.3,
        };
        c / (d as f64 + 1.0)
    }

    /// m*(u, x) with `x = (y_{t-1}, y_{t-2})`; `lag2` is ignored for order-1 models.
    #[inline]
    fn mean(self, u: f64, lag1: f64, lag2: f64) -> f64 {
        let phase = 2.0 * PI * u;
        match self {
            ProcessFamily::GaussianTvAR1 => 0.9 * phase.sin() * lag1,
            ProcessFamily::GaussianTvAR2 | ProcessFamily::CauchyTvAR2 => {
                1.8 * (1.5 - phase.cos()).cos() * lag1 - 0.81 * lag2
            }
            ProcessFamily::GaussianTvTAR1 => {
                0.4 * phase.sin() * lag1.max(0.0) + 0.5 * phase.cos() * (-lag1).max(0.0)
            }
        }
    }
}

impl fmt::Display for ProcessFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProcessFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ProcessFamily::ALL
            .into_iter()
            .find(|p| p.name() == s.trim().to_ascii_lowercase())
            .ok_or_else(|| {
                Error::input(format!(
                    "unknown process '{s}' (expected tvar1-gauss, tvar2-gauss, tvar2-cauchy or tvtar1-gauss)"
                ))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProcessSpec {
    pub family: ProcessFamily,
    pub burn_in: usize,
}

impl ProcessSpec {
    pub fn new(family: ProcessFamily) -> Self {
        ProcessSpec {
            family,
            burn_in: DEFAULT_BURN_IN,
        }
    }

    pub fn with_burn_in(mut self, burn_in: usize) -> Self {
        self.burn_in = burn_in;
        self
    }

    /// The innovation law of this family drawn from `seed`.
    pub fn noise(&self, seed: u64) -> Box<dyn NoiseSource + Send> {
        match self.family {
            ProcessFamily::CauchyTvAR2 => Box::new(CauchyNoise(stream(seed))),
            _ => Box::new(GaussianNoise(stream(seed))),
        }
    }
}

impl From<ProcessFamily> for ProcessSpec {
    fn from(family: ProcessFamily) -> Self {
        ProcessSpec::new(family)
    }
}

/// A stream of i.i.d. innovations.
pub trait NoiseSource {
    fn draw(&mut self) -> f64;
}

pub struct GaussianNoise(pub StreamRng);

impl NoiseSource for GaussianNoise {
    fn draw(&mut self) -> f64 {
        self.0.sample(StandardNormal)
    }
}

/// Standard Cauchy via `tan(π(U - 1/2))`, U uniform on the open interval.
pub struct CauchyNoise(pub StreamRng);

impl NoiseSource for CauchyNoise {
    fn draw(&mut self) -> f64 {
        let u: f64 = self.0.sample(Open01);
        (PI * (u - 0.5)).tan()
    }
}

/// Always zero; the recursions then stay at their zero fixed point.
pub struct ZeroNoise;

impl NoiseSource for ZeroNoise {
    fn draw(&mut self) -> f64 {
        0.0
    }
}

impl<F: FnMut() -> f64> NoiseSource for F {
    fn draw(&mut self) -> f64 {
        self()
    }
}

fn check_len(t_len: usize) -> Result<()> {
    if t_len < 2 {
        return Err(Error::input(format!("T must be at least 2, got {t_len}")));
    }
    Ok(())
}

/// Runs the recursion with coefficients at `coeff_u(t)`; burn-in steps use `burn_in_u`.
fn recurse(
    spec: &ProcessSpec,
    t_len: usize,
    burn_in_u: f64,
    coeff_u: impl Fn(usize) -> f64,
    noise: &mut dyn NoiseSource,
) -> Result<Series> {
    let family = spec.family;
    let (mut lag1, mut lag2) = (0.0f64, 0.0f64);
    for _ in 0..spec.burn_in {
        let y = family.mean(burn_in_u, lag1, lag2) + noise.draw();
        lag2 = lag1;
        lag1 = y;
    }
    let mut values = Vec::with_capacity(t_len);
    for t in 1..=t_len {
        let y = family.mean(coeff_u(t), lag1, lag2) + noise.draw();
        if !y.is_finite() {
            return Err(Error::input(format!(
                "{family} diverged to a non-finite value at t={t}"
            )));
        }
        values.push(y);
        lag2 = lag1;
        lag1 = y;
    }
    Series::new(values)
}

/// Simulates `Y_{1..T}` with innovations from `noise`.
pub fn simulate_with_noise(
    spec: &ProcessSpec,
    t_len: usize,
    noise: &mut dyn NoiseSource,
) -> Result<Series> {
    check_len(t_len)?;
    let tf = t_len as f64;
    recurse(spec, t_len, 1.0 / tf, |t| t as f64 / tf, noise)
}

/// Simulates `Y_{1..T}`; deterministic in `(spec, T, seed)`.
pub fn simulate(spec: &ProcessSpec, t_len: usize, seed: u64) -> Result<Series> {
    check_len(t_len)?;
    let mut noise = spec.noise(seed);
    let mut s = simulate_with_noise(spec, t_len, noise.as_mut())?.named(spec.family.name());
    s.seed = Some(seed);
    Ok(s)
}

/// The stationary approximation `Y_t(u)` with coefficients frozen at `u`.
pub fn simulate_stationary_at_with_noise(
    spec: &ProcessSpec,
    u: f64,
    t_len: usize,
    noise: &mut dyn NoiseSource,
) -> Result<Series> {
    check_len(t_len)?;
    if !(0.0..=1.0).contains(&u) {
        return Err(Error::input(format!("u must lie in [0, 1], got {u}")));
    }
    recurse(spec, t_len, u, |_| u, noise)
}

pub fn simulate_stationary_at(
    spec: &ProcessSpec,
    u: f64,
    t_len: usize,
    seed: u64,
) -> Result<Series> {
    let mut noise = spec.noise(seed);
    let mut s = simulate_stationary_at_with_noise(spec, u, t_len, noise.as_mut())?;
    s.seed = Some(seed);
    Ok(s)
}

/// m*(u, x) for the family; `x` is ordered most recent lag first.
pub fn true_conditional_mean(family: ProcessFamily, u: f64, x: &[f64]) -> Result<f64> {
    let d = family.lag_order();
    if x.len() != d {
        return Err(Error::input(format!(
            "{family} conditions on {d} lag(s), got a {}-vector",
            x.len()
        )));
    }
    Ok(family.mean(u, x[0], if d > 1 { x[1] } else { 0.0 }))
}

/// `L` copies of `base`, each perturbed by independent `N(0, σ²)` noise.
/// Replication `l` draws from its own derived stream.
pub fn gaussian_smooth_replicate(
    base: &Series,
    sigma: f64,
    replications: usize,
    seed: u64,
) -> Result<Vec<Series>> {
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::input(format!("sigma must be positive, got {sigma}")));
    }
    if replications == 0 {
        return Err(Error::input("need at least one replication"));
    }
    (0..replications)
        .map(|l| gaussian_smooth_one(base, sigma, derive_seed(seed, l as u64)))
        .collect()
}

/// One smoothed replication drawn from `seed`.
pub(crate) fn gaussian_smooth_one(base: &Series, sigma: f64, seed: u64) -> Result<Series> {
    let mut rng = stream(seed);
    let values = base
        .values()
        .iter()
        .map(|y| {
            let z: f64 = rng.sample(StandardNormal);
            y + sigma * z
        })
        .collect();
    let mut s = Series::new(values)?;
    s.name = base.name.clone();
    s.seed = Some(seed);
    Ok(s)
}

/// Lag-embedded pairs `(X_t, Y_t)` for `t = d+1..T` with
/// `X_t = (Y_{t-1}, ..., Y_{t-d})`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaggedData {
    covariates: Vec<f64>,
    responses: Vec<f64>,
    times: Vec<usize>,
    dim: usize,
    series_len: usize,
}

impl LaggedData {
    /// Builds pairs from explicit rows; `covariates` is row-major `n × dim`.
    pub fn from_parts(
        covariates: Vec<f64>,
        responses: Vec<f64>,
        times: Vec<usize>,
        dim: usize,
        series_len: usize,
    ) -> Result<Self> {
        let n = responses.len();
        if dim == 0 || covariates.len() != n * dim || times.len() != n {
            return Err(Error::input(format!(
                "inconsistent lagged data: {} covariates, {} responses, {} times, dim {}",
                covariates.len(),
                n,
                times.len(),
                dim
            )));
        }
        if n == 0 {
            return Err(Error::input("lagged data is empty"));
        }
        if times.iter().any(|&t| t == 0 || t > series_len) {
            return Err(Error::input("time index outside 1..=T"));
        }
        Ok(LaggedData {
            covariates,
            responses,
            times,
            dim,
            series_len,
        })
    }

    pub fn len(&self) -> usize {
        self.responses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.responses.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Length `T` of the series the pairs came from.
    pub fn series_len(&self) -> usize {
        self.series_len
    }

    pub fn covariate(&self, i: usize) -> &[f64] {
        &self.covariates[i * self.dim..(i + 1) * self.dim]
    }

    pub fn response(&self, i: usize) -> f64 {
        self.responses[i]
    }

    pub fn responses(&self) -> &[f64] {
        &self.responses
    }

    pub fn time(&self, i: usize) -> usize {
        self.times[i]
    }

    pub fn times(&self) -> &[usize] {
        &self.times
    }

    /// Row position of series index `t`, if it has a full lag vector.
    pub fn position_of(&self, t: usize) -> Option<usize> {
        // Times are consecutive for embedded series but not for hand-built data.
        let guess = t.checked_sub(self.times[0])?;
        if self.times.get(guess) == Some(&t) {
            Some(guess)
        } else {
            self.times.iter().position(|&s| s == t)
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[f64], f64, usize)> + '_ {
        (0..self.len()).map(move |i| (self.covariate(i), self.responses[i], self.times[i]))
    }
}

pub fn lag_embed(series: &Series, d: usize) -> Result<LaggedData> {
    let t_len = series.len();
    if d == 0 || d >= t_len {
        return Err(Error::input(format!(
            "lag order must satisfy 1 <= d < T, got d={d}, T={t_len}"
        )));
    }
    let y = series.values();
    let n = t_len - d;
    let mut covariates = Vec::with_capacity(n * d);
    let mut responses = Vec::with_capacity(n);
    let mut times = Vec::with_capacity(n);
    for t in d + 1..=t_len {
        for lag in 1..=d {
            covariates.push(y[t - 1 - lag]);
        }
        responses.push(y[t - 1]);
        times.push(t);
    }
    LaggedData::from_parts(covariates, responses, times, d, t_len)
}
