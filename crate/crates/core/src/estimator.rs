//! Nadaraya-Watson estimators of the conditional law of `Y_t` given `X_t = x`.
//!
//! The weight of observation `a` at query `(t, x)` is
//!
//! ```text
//! ω_a ∝ K1((t - a) / (T h)) · Π_j K2((x_j - X_a^j) / h)
//! ```
//!
//! normalized to sum to one. One bandwidth `h` is shared by the time and
//! space directions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::KernelSpec;
use crate::measure::{dot, DiscreteMeasure, StepCdf};
use crate::simulate::LaggedData;

/// Density-diagnostic level below which an estimate is flagged as unreliable.
pub const DEFAULT_DENSITY_FLOOR: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NwParams {
    pub k_time: KernelSpec,
    pub k_space: KernelSpec,
    pub h: f64,
    /// Evaluate outside the interior region `I_h` instead of refusing.
    #[serde(default)]
    pub force_boundary: bool,
    /// Permit negative kernel products. Only the conditional mean is then available.
    #[serde(default)]
    pub allow_signed_weights: bool,
}

impl NwParams {
    pub fn new(k_time: KernelSpec, k_space: KernelSpec, h: f64) -> Self {
        NwParams {
            k_time,
            k_space,
            h,
            force_boundary: false,
            allow_signed_weights: false,
        }
    }

    pub fn force_boundary(mut self, yes: bool) -> Self {
        self.force_boundary = yes;
        self
    }

    pub fn allow_signed_weights(mut self, yes: bool) -> Self {
        self.allow_signed_weights = yes;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.h > 0.0 && self.h.is_finite()) {
            return Err(Error::input(format!("bandwidth must be positive, got {}", self.h)));
        }
        Ok(())
    }

    /// `I_h = [C1 h, 1 - C1 h]`, with `C1` the time kernel's radius.
    pub fn interior(&self) -> (f64, f64) {
        boundary_interval(&self.k_time, self.h)
    }

    /// Rejects `u` outside `I_h` unless boundary evaluation is forced.
    pub fn check_interior(&self, u: f64) -> Result<()> {
        let (lower, upper) = self.interior();
        if self.force_boundary || (lower <= u && u <= upper) {
            Ok(())
        } else {
            Err(Error::BoundaryRegion { u, lower, upper })
        }
    }
}

pub fn boundary_interval(k_time: &KernelSpec, h: f64) -> (f64, f64) {
    let c = k_time.radius() * h;
    (c, 1.0 - c)
}

/// Normalized Nadaraya-Watson weights, aligned with the rows of the data set.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector {
    weights: Vec<f64>,
    t_index: usize,
    query_x: Vec<f64>,
    h: f64,
    signed: bool,
    signed_kernel: Option<String>,
}

impl WeightVector {
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn t_index(&self) -> usize {
        self.t_index
    }

    pub fn query_x(&self) -> &[f64] {
        &self.query_x
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    /// True when some weight is negative (signed-weights mode only).
    pub fn is_signed(&self) -> bool {
        self.signed
    }

    fn ensure_probability(&self) -> Result<()> {
        if self.signed {
            return Err(Error::SignedWeights {
                kernel: self.signed_kernel.clone().unwrap_or_default(),
            });
        }
        Ok(())
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if n != self.weights.len() {
            return Err(Error::input(format!(
                "{} responses given for {} weights",
                n,
                self.weights.len()
            )));
        }
        Ok(())
    }
}

fn check_query(data: &LaggedData, t_query: usize, x_query: &[f64]) -> Result<()> {
    if x_query.len() != data.dim() {
        return Err(Error::input(format!(
            "query has dimension {} but covariates have dimension {}",
            x_query.len(),
            data.dim()
        )));
    }
    if x_query.iter().any(|v| !v.is_finite()) {
        return Err(Error::input("query point must be finite"));
    }
    if t_query == 0 || t_query > data.series_len() {
        return Err(Error::input(format!(
            "t={t_query} outside 1..={}",
            data.series_len()
        )));
    }
    Ok(())
}

/// Raw kernel products `K1 · Π K2` for every row.
fn kernel_products(data: &LaggedData, t_query: usize, x_query: &[f64], params: &NwParams) -> Vec<f64> {
    let t_scale = data.series_len() as f64 * params.h;
    let tq = t_query as f64;
    data.iter()
        .map(|(x, _, a)| {
            let mut p = params.k_time.density((tq - a as f64) / t_scale);
            if p == 0.0 {
                return 0.0;
            }
            for (xq, xa) in x_query.iter().zip(x) {
                p *= params.k_space.density((xq - xa) / params.h);
                if p == 0.0 {
                    break;
                }
            }
            p
        })
        .collect()
}

pub fn nw_weights(
    data: &LaggedData,
    t_query: usize,
    x_query: &[f64],
    params: &NwParams,
) -> Result<WeightVector> {
    params.validate()?;
    check_query(data, t_query, x_query)?;
    params.check_interior(t_query as f64 / data.series_len() as f64)?;

    let mut products = kernel_products(data, t_query, x_query, params);
    let signed = products.iter().any(|&p| p < 0.0);
    let signed_kernel = signed.then(|| {
        if params.k_space.family().is_signed() {
            params.k_space.to_string()
        } else {
            params.k_time.to_string()
        }
    });
    if signed && !params.allow_signed_weights {
        return Err(Error::SignedWeights {
            kernel: signed_kernel.unwrap_or_default(),
        });
    }
    let denom: f64 = products.iter().sum();
    if denom == 0.0 || !denom.is_finite() {
        return Err(Error::EmptyNeighborhood {
            t_index: t_query,
            h: params.h,
        });
    }
    for p in &mut products {
        *p /= denom;
    }
    Ok(WeightVector {
        weights: products,
        t_index: t_query,
        query_x: x_query.to_vec(),
        h: params.h,
        signed,
        signed_kernel,
    })
}

/// Weights at `t` conditioned on the data's own lag vector `X_t`.
pub fn nw_weights_at_own_lag(data: &LaggedData, t_query: usize, params: &NwParams) -> Result<WeightVector> {
    let row = data.position_of(t_query).ok_or_else(|| {
        Error::input(format!(
            "t={t_query} has no complete lag vector (needs t > d = {})",
            data.dim()
        ))
    })?;
    nw_weights(data, t_query, data.covariate(row), params)
}

/// `π̂_t(·|x) = Σ ω_a δ_{Y_a}` in canonical form. Zero-weight atoms are dropped.
pub fn conditional_measure(w: &WeightVector, responses: &[f64]) -> Result<DiscreteMeasure> {
    w.check_len(responses.len())?;
    w.ensure_probability()?;
    DiscreteMeasure::new(responses.to_vec(), w.weights.clone())
}

/// `F̂_t(y|x) = Σ ω_a 1{Y_a <= y}`.
pub fn conditional_cdf(w: &WeightVector, responses: &[f64]) -> Result<StepCdf> {
    Ok(conditional_measure(w, responses)?.to_cdf())
}

/// `m̂(u, x) = Σ ω_a Y_a`; also valid for signed weights.
pub fn conditional_mean(w: &WeightVector, responses: &[f64]) -> Result<f64> {
    w.check_len(responses.len())?;
    Ok(w.weights.iter().zip(responses).map(|(w, y)| w * y).sum())
}

/// Step CDF of `θᵀY_a` under the same weights, for vector responses.
pub fn projected_conditional_cdf<V: AsRef<[f64]>>(
    w: &WeightVector,
    responses: &[V],
    theta: &[f64],
) -> Result<StepCdf> {
    let norm = theta.iter().map(|v| v * v).sum::<f64>().sqrt();
    if !((norm - 1.0).abs() <= 1e-9) {
        return Err(Error::input(format!("direction must be a unit vector, |θ| = {norm}")));
    }
    let mut projected = Vec::with_capacity(responses.len());
    for y in responses {
        let y = y.as_ref();
        if y.len() != theta.len() {
            return Err(Error::input(format!(
                "response of dimension {} cannot be projected on a {}-vector",
                y.len(),
                theta.len()
            )));
        }
        projected.push(dot(y, theta));
    }
    conditional_cdf(w, &projected)
}

/// `J = (1 / (n h^(d+1))) Σ K1 · Π K2`, the normalized weight denominator
/// over the `n` available rows. Zero for an empty window.
pub fn density_diagnostic(
    data: &LaggedData,
    t_query: usize,
    x_query: &[f64],
    params: &NwParams,
) -> Result<f64> {
    params.validate()?;
    check_query(data, t_query, x_query)?;
    let sum: f64 = kernel_products(data, t_query, x_query, params).iter().sum();
    Ok(sum / (data.len() as f64 * params.h.powi(data.dim() as i32 + 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::KernelFamily;

    fn data_1d(x: &[f64], y: &[f64]) -> LaggedData {
        let n = x.len();
        LaggedData::from_parts(x.to_vec(), y.to_vec(), (1..=n).collect(), 1, n).unwrap()
    }

    fn spec(f: KernelFamily) -> KernelSpec {
        KernelSpec::new(f)
    }

    #[test]
    fn constant_covariates_give_uniform_weights() {
        let data = data_1d(&[0.3; 5], &[1.0, 2.0, 3.0, 4.0, 5.0]);
        // Uniform K1 with h >= 1 covers every t.
        let p = NwParams::new(spec(KernelFamily::Uniform), spec(KernelFamily::Gaussian), 1.0)
            .force_boundary(true);
        let w = nw_weights(&data, 3, &[0.3], &p).unwrap();
        for &v in w.weights() {
            assert!((v - 0.2).abs() < 1e-15);
        }
    }

    #[test]
    fn triangle_space_kernel_example() {
        let data = data_1d(&[0.0, 0.5, 1.0, 2.0], &[10.0, 20.0, 30.0, 40.0]);
        let p = NwParams::new(spec(KernelFamily::Uniform), spec(KernelFamily::Triangle), 1.0)
            .force_boundary(true);
        let w = nw_weights(&data, 2, &[0.0], &p).unwrap();
        let expected = [2.0 / 3.0, 1.0 / 3.0, 0.0, 0.0];
        for (a, b) in w.weights().iter().zip(expected) {
            assert!((a - b).abs() < 1e-15);
        }
        let f = conditional_cdf(&w, data.responses()).unwrap();
        assert!((f.eval(15.0) - 2.0 / 3.0).abs() < 1e-15);
        assert!((f.eval(25.0) - 1.0).abs() < 1e-15);
        let m = conditional_mean(&w, data.responses()).unwrap();
        assert!((m - 40.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn outside_compact_support_gets_zero_weight() {
        let data = data_1d(&[0.0, 0.05, 3.0], &[1.0, 2.0, 3.0]);
        let p = NwParams::new(spec(KernelFamily::Uniform), spec(KernelFamily::Epanechnikov), 0.5)
            .force_boundary(true);
        let w = nw_weights(&data, 2, &[0.0], &p).unwrap();
        assert_eq!(w.weights()[2], 0.0);
    }

    #[test]
    fn error_paths() {
        let data = data_1d(&[0.0, 0.1, 0.2, 0.3], &[1.0, 2.0, 3.0, 4.0]);
        let p = NwParams::new(spec(KernelFamily::Uniform), spec(KernelFamily::Uniform), 0.1)
            .force_boundary(true);
        match nw_weights(&data, 2, &[50.0], &p) {
            Err(Error::EmptyNeighborhood { t_index: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        let strict = NwParams::new(spec(KernelFamily::Uniform), spec(KernelFamily::Uniform), 0.3);
        assert!(matches!(
            nw_weights(&data, 1, &[0.0], &strict),
            Err(Error::BoundaryRegion { .. })
        ));
        assert!(nw_weights(&data, 2, &[0.0, 1.0], &p).is_err());
        assert!(nw_weights(&data, 9, &[0.0], &p).is_err());
        let bad_h = NwParams::new(spec(KernelFamily::Uniform), spec(KernelFamily::Uniform), 0.0);
        assert!(nw_weights(&data, 2, &[0.0], &bad_h).is_err());

        let w = nw_weights(&data, 2, &[0.0], &p.force_boundary(true)).unwrap();
        assert!(conditional_cdf(&w, &[1.0]).is_err());
        assert!(conditional_mean(&w, &[1.0]).is_err());
    }

    #[test]
    fn silverman_signed_weights() {
        // Covariates 4/h away land in Silverman's negative lobe.
        let data = data_1d(&[0.0, 4.0, 0.1], &[1.0, 2.0, 3.0]);
        let p = NwParams::new(spec(KernelFamily::Uniform), spec(KernelFamily::Silverman), 1.0)
            .force_boundary(true);
        match nw_weights(&data, 2, &[0.0], &p) {
            Err(Error::SignedWeights { kernel }) => assert_eq!(kernel, "silverman"),
            other => panic!("{other:?}"),
        }
        let w = nw_weights(&data, 2, &[0.0], &p.allow_signed_weights(true)).unwrap();
        assert!(w.is_signed());
        assert!((w.weights().iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(conditional_mean(&w, data.responses()).is_ok());
        assert!(matches!(
            conditional_cdf(&w, data.responses()),
            Err(Error::SignedWeights { .. })
        ));
    }

    #[test]
    fn measure_forms() {
        let data = data_1d(&[0.0; 3], &[3.0, 3.0, 3.0]);
        let p = NwParams::new(spec(KernelFamily::Uniform), spec(KernelFamily::Gaussian), 1.0)
            .force_boundary(true);
        let w = nw_weights(&data, 2, &[0.0], &p).unwrap();
        let m = conditional_measure(&w, data.responses()).unwrap();
        assert_eq!(m.support(), &[3.0]);
        let f = conditional_cdf(&w, data.responses()).unwrap();
        assert_eq!(f.eval(2.999), 0.0);
        assert!((f.eval(3.0) - 1.0).abs() < 1e-15);

        let dup = conditional_measure(&w, &[1.0, 1.0, 2.0]).unwrap();
        assert_eq!(dup.support(), &[1.0, 2.0]);
        assert!((dup.weights()[0] - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(dup.to_cdf(), conditional_cdf(&w, &[1.0, 1.0, 2.0]).unwrap());
        assert!((conditional_mean(&w, &[1.0, 2.0, 3.0]).unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn dirac_weight_mean() {
        let data = data_1d(&[0.0, 5.0, 10.0], &[1.0, 7.0, 2.0]);
        let p = NwParams::new(spec(KernelFamily::Uniform), spec(KernelFamily::Uniform), 1.0)
            .force_boundary(true);
        let w = nw_weights(&data, 2, &[5.0], &p).unwrap();
        assert_eq!(w.weights(), &[0.0, 1.0, 0.0]);
        assert_eq!(conditional_mean(&w, data.responses()).unwrap(), 7.0);
        assert_eq!(conditional_measure(&w, data.responses()).unwrap().len(), 1);
    }

    #[test]
    fn projections() {
        let data = data_1d(&[0.0, 0.0], &[3.0, 5.0]);
        let p = NwParams::new(spec(KernelFamily::Uniform), spec(KernelFamily::Uniform), 1.0)
            .force_boundary(true);
        let w = nw_weights(&data, 1, &[0.0], &p).unwrap();
        let ys = [vec![3.0, 99.0], vec![5.0, -4.0]];
        let f = projected_conditional_cdf(&w, &ys, &[1.0, 0.0]).unwrap();
        assert_eq!(f.jumps(), &[3.0, 5.0]);
        assert!(projected_conditional_cdf(&w, &ys, &[1.0, 1.0]).is_err());

        let scalar = [[3.0], [5.0]];
        assert_eq!(
            projected_conditional_cdf(&w, &scalar, &[1.0]).unwrap(),
            conditional_cdf(&w, data.responses()).unwrap()
        );

        let dirac = nw_weights(&data_1d(&[0.0, 9.0], &[0.0, 0.0]), 1, &[0.0], &p).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let f = projected_conditional_cdf(&dirac, &[vec![1.0, 1.0], vec![7.0, 7.0]], &[s, s]).unwrap();
        assert_eq!(f.jumps().len(), 1);
        assert!((f.jumps()[0] - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn density_diagnostic_values() {
        let data = data_1d(&[0.0, 0.1, 0.2, 0.3], &[1.0; 4]);
        let uni = NwParams::new(spec(KernelFamily::Uniform), spec(KernelFamily::Uniform), 1.0);
        let j = density_diagnostic(&data, 2, &[0.1], &uni).unwrap();
        assert!((j - 0.25).abs() < 1e-15);
        let narrow = NwParams::new(spec(KernelFamily::Uniform), spec(KernelFamily::Uniform), 0.01);
        assert_eq!(density_diagnostic(&data, 2, &[50.0], &narrow).unwrap(), 0.0);
        // Constant products c = 1/4 at h = 2 give c / h^2.
        let wide = NwParams::new(spec(KernelFamily::Uniform), spec(KernelFamily::Uniform), 2.0);
        let j = density_diagnostic(&data, 2, &[0.1], &wide).unwrap();
        assert!((j - 0.25 / 4.0).abs() < 1e-15);
    }
}
