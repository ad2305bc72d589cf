//! Exact one-dimensional Wasserstein distances and Monte Carlo sliced W1.
//!
//! In one dimension the optimal coupling is the quantile coupling
//! `(F_μ^{-1}(Z), F_ν^{-1}(Z))` with `Z ~ U(0, 1)`, so
//!
//! ```text
//! W_r(μ, ν)^r = ∫_0^1 |F_μ^{-1}(z) - F_ν^{-1}(z)|^r dz
//! ```
//!
//! Both quantile functions are constant between consecutive cumulative
//! weights, and the integral is an exact finite sum over the merged
//! breakpoints.

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measure::{DiscreteMeasure, StepCdf, VectorMeasure};
use crate::rng::stream;

/// Cumulative weights closer than this are treated as the same breakpoint.
pub const BREAKPOINT_TOLERANCE: f64 = 1e-15;

pub const DEFAULT_DIRECTIONS: usize = 128;

/// Monte Carlo estimate of a sliced distance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlicedEstimate {
    pub value: f64,
    /// Sample standard deviation of the per-direction distances over √n.
    pub std_error: f64,
    pub n_directions: usize,
    pub seed: u64,
}

/// Integrates `cost(|F_μ^{-1} - F_ν^{-1}|)` over (0, 1].
fn quantile_sweep(mu: &DiscreteMeasure, nu: &DiscreteMeasure, cost: impl Fn(f64) -> f64) -> f64 {
    let (xs, ws) = (mu.support(), mu.weights());
    let (ys, vs) = (nu.support(), nu.weights());
    let (tm, tn): (f64, f64) = (ws.iter().sum(), vs.iter().sum());
    let (n, m) = (xs.len(), ys.len());

    // Running sums are normalized and the final breakpoint pinned to 1.
    let cum = |acc: f64, k: usize, len: usize, total: f64| if k + 1 == len { 1.0 } else { acc / total };
    let (mut i, mut j) = (0usize, 0usize);
    let (mut acc_mu, mut acc_nu) = (ws[0], vs[0]);
    let (mut cm, mut cn) = (cum(acc_mu, 0, n, tm), cum(acc_nu, 0, m, tn));
    let mut prev = 0.0;
    let mut total = 0.0;
    loop {
        let z = cm.min(cn);
        if z > prev {
            total += (z - prev) * cost((xs[i] - ys[j]).abs());
            prev = z;
        }
        let step_mu = cm - z <= BREAKPOINT_TOLERANCE;
        let step_nu = cn - z <= BREAKPOINT_TOLERANCE;
        if step_mu {
            i += 1;
            if i == n {
                break;
            }
            acc_mu += ws[i];
            cm = cum(acc_mu, i, n, tm);
        }
        if step_nu {
            j += 1;
            if j == m {
                break;
            }
            acc_nu += vs[j];
            cn = cum(acc_nu, j, m, tn);
        }
    }
    total
}

/// Exact W1 between two discrete measures.
pub fn w1_discrete(mu: &DiscreteMeasure, nu: &DiscreteMeasure) -> f64 {
    quantile_sweep(mu, nu, |d| d)
}

/// Exact W_r for `r >= 1`.
pub fn wr_discrete(mu: &DiscreteMeasure, nu: &DiscreteMeasure, r: f64) -> Result<f64> {
    if !(r >= 1.0 && r.is_finite()) {
        return Err(Error::input(format!("Wasserstein order must be >= 1, got {r}")));
    }
    if r == 1.0 {
        return Ok(w1_discrete(mu, nu));
    }
    Ok(quantile_sweep(mu, nu, |d| d.powf(r)).powf(1.0 / r))
}

/// `∫ |F(v) - G(v)| dv` over the union of jump points.
pub fn w1_cdf(f: &StepCdf, g: &StepCdf) -> f64 {
    let (fx, fv) = (f.jumps(), f.values());
    let (gx, gv) = (g.jumps(), g.values());
    let (mut i, mut j) = (0usize, 0usize);
    let (mut f_now, mut g_now) = (0.0f64, 0.0f64);
    let mut last: Option<f64> = None;
    let mut total = 0.0;
    while i < fx.len() || j < gx.len() {
        let p = match (fx.get(i), gx.get(j)) {
            (Some(&a), Some(&b)) => a.min(b),
            (Some(&a), None) => a,
            (None, Some(&b)) => b,
            (None, None) => unreachable!(),
        };
        if let Some(q) = last {
            total += (f_now - g_now).abs() * (p - q);
        }
        if fx.get(i) == Some(&p) {
            f_now = fv[i];
            i += 1;
        }
        if gx.get(j) == Some(&p) {
            g_now = gv[j];
            j += 1;
        }
        last = Some(p);
    }
    total
}

/// `n` directions uniform on the unit sphere of ℝ^q, from normalized
/// standard normal vectors. For `q = 1` each direction is ±1.
pub fn sample_sphere(q: usize, n: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
    if q == 0 {
        return Err(Error::input("sphere dimension q must be at least 1"));
    }
    if n == 0 {
        return Err(Error::input("need at least one direction"));
    }
    let mut rng = stream(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        if q == 1 {
            out.push(vec![if rng.random::<bool>() { 1.0 } else { -1.0 }]);
            continue;
        }
        let v: Vec<f64> = (0..q).map(|_| rng.sample(StandardNormal)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 0.0 {
            out.push(v.into_iter().map(|x| x / norm).collect());
        }
    }
    Ok(out)
}

/// Monte Carlo sliced W1: mean of W1 between the θ-projections over
/// `n_directions` uniform directions.
pub fn sliced_w1(
    mu: &VectorMeasure,
    nu: &VectorMeasure,
    n_directions: usize,
    seed: u64,
) -> Result<SlicedEstimate> {
    if mu.dim() != nu.dim() {
        return Err(Error::input(format!(
            "measures live in different dimensions ({} vs {})",
            mu.dim(),
            nu.dim()
        )));
    }
    if n_directions < 2 {
        return Err(Error::input("sliced W1 needs at least 2 directions"));
    }
    let directions = sample_sphere(mu.dim(), n_directions, seed)?;
    let values = directions
        .par_iter()
        .map(|theta| Ok(w1_discrete(&mu.project(theta)?, &nu.project(theta)?)))
        .collect::<Result<Vec<f64>>>()?;

    // Sequential reduction in direction order.
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    Ok(SlicedEstimate {
        value: mean,
        std_error: (var / n).sqrt(),
        n_directions,
        seed,
    })
}
