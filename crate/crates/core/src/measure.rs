//! Finitely supported probability measures and their step CDFs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Allowed deviation of total mass from 1.
pub const MASS_TOLERANCE: f64 = 1e-9;

/// A probability measure `Σ w_i δ_{x_i}` on the real line.
///
/// Always canonical: support strictly increasing, weights positive, total
/// mass 1 within [`MASS_TOLERANCE`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscreteMeasure {
    support: Vec<f64>,
    weights: Vec<f64>,
}

fn check_mass(total: f64) -> Result<()> {
    if (total - 1.0).abs() > MASS_TOLERANCE {
        return Err(Error::input(format!("weights sum to {total}, expected 1")));
    }
    Ok(())
}

impl DiscreteMeasure {
    /// Canonicalizes arbitrary atoms: drops zero weights, sorts, and merges
    /// equal support points by summing their weights.
    pub fn new(support: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if support.len() != weights.len() {
            return Err(Error::input(format!(
                "support has {} points but {} weights were given",
                support.len(),
                weights.len()
            )));
        }
        let mut atoms = Vec::with_capacity(support.len());
        for (x, w) in support.into_iter().zip(weights) {
            if !x.is_finite() {
                return Err(Error::input(format!("support point {x} is not finite")));
            }
            if !(w.is_finite() && w >= 0.0) {
                return Err(Error::input(format!("weight {w} is not a probability")));
            }
            if w > 0.0 {
                atoms.push((x, w));
            }
        }
        Self::from_atoms(atoms)
    }

    pub(crate) fn from_atoms(mut atoms: Vec<(f64, f64)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::input("measure has no mass"));
        }
        atoms.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut support: Vec<f64> = Vec::with_capacity(atoms.len());
        let mut weights: Vec<f64> = Vec::with_capacity(atoms.len());
        for (x, w) in atoms {
            match support.last() {
                Some(&last) if last == x => *weights.last_mut().unwrap() += w,
                _ => {
                    support.push(x);
                    weights.push(w);
                }
            }
        }
        check_mass(weights.iter().sum())?;
        Ok(DiscreteMeasure { support, weights })
    }

    /// Accepts atoms that are already canonical, rejecting anything else.
    pub fn from_canonical(support: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if support.is_empty() || support.len() != weights.len() {
            return Err(Error::input("canonical measure needs matching, non-empty support and weights"));
        }
        if support.iter().any(|x| !x.is_finite()) {
            return Err(Error::input("support must be finite"));
        }
        if support.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::input("support must be strictly increasing"));
        }
        if weights.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
            return Err(Error::input("weights must be non-negative"));
        }
        check_mass(weights.iter().sum())?;
        Ok(DiscreteMeasure { support, weights })
    }

    pub fn dirac(x: f64) -> Result<Self> {
        Self::new(vec![x], vec![1.0])
    }

    /// Equal mass on each sample.
    pub fn empirical(samples: &[f64]) -> Result<Self> {
        let w = 1.0 / samples.len() as f64;
        Self::new(samples.to_vec(), vec![w; samples.len()])
    }

    pub fn support(&self) -> &[f64] {
        &self.support
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn mean(&self) -> f64 {
        self.support.iter().zip(&self.weights).map(|(x, w)| x * w).sum()
    }

    /// The pushforward under `x ↦ a·x + b`.
    pub fn affine(&self, a: f64, b: f64) -> Result<Self> {
        Self::new(
            self.support.iter().map(|x| a * x + b).collect(),
            self.weights.clone(),
        )
    }

    /// The step CDF. Rounding in the running sum is absorbed by capping it
    /// at 1 and pinning the last value to exactly 1.
    pub fn to_cdf(&self) -> StepCdf {
        let mut acc = 0.0;
        let mut cum: Vec<f64> = self
            .weights
            .iter()
            .map(|w| {
                acc += w;
                acc.min(1.0)
            })
            .collect();
        *cum.last_mut().expect("canonical measures are non-empty") = 1.0;
        StepCdf {
            jumps: self.support.clone(),
            cum,
        }
    }
}

/// A right-continuous step CDF: `F(y) = cum[i]` for `jumps[i] <= y < jumps[i+1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepCdf {
    jumps: Vec<f64>,
    cum: Vec<f64>,
}

impl StepCdf {
    pub fn new(jumps: Vec<f64>, cum: Vec<f64>) -> Result<Self> {
        if jumps.is_empty() || jumps.len() != cum.len() {
            return Err(Error::input("step CDF needs matching, non-empty jumps and values"));
        }
        if jumps.iter().any(|x| !x.is_finite()) || jumps.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::input("jump points must be finite and strictly increasing"));
        }
        if cum[0] < 0.0 || cum.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::input("CDF values must be non-negative and nondecreasing"));
        }
        check_mass(*cum.last().unwrap())?;
        Ok(StepCdf { jumps, cum })
    }

    pub fn jumps(&self) -> &[f64] {
        &self.jumps
    }

    pub fn values(&self) -> &[f64] {
        &self.cum
    }

    pub fn eval(&self, y: f64) -> f64 {
        match self.jumps.partition_point(|&x| x <= y) {
            0 => 0.0,
            i => self.cum[i - 1],
        }
    }

    pub fn to_measure(&self) -> DiscreteMeasure {
        let mut prev = 0.0;
        let weights = self
            .cum
            .iter()
            .map(|&c| {
                let w = c - prev;
                prev = c;
                w
            })
            .collect();
        DiscreteMeasure {
            support: self.jumps.clone(),
            weights,
        }
    }

    /// Pointwise average `(1/L) Σ F_l`, exact on the union of all jump points.
    pub fn average(cdfs: &[StepCdf]) -> Result<StepCdf> {
        if cdfs.is_empty() {
            return Err(Error::input("cannot average zero CDFs"));
        }
        let scale = 1.0 / cdfs.len() as f64;
        let total: usize = cdfs.iter().map(|c| c.jumps.len()).sum();
        let mut atoms = Vec::with_capacity(total);
        for c in cdfs {
            let mut prev = 0.0;
            for (&x, &v) in c.jumps.iter().zip(&c.cum) {
                atoms.push((x, (v - prev) * scale));
                prev = v;
            }
        }
        Ok(DiscreteMeasure::from_atoms(atoms)?.to_cdf())
    }
}

/// A probability measure on ℝ^q with points stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorMeasure {
    dim: usize,
    points: Vec<f64>,
    weights: Vec<f64>,
}

impl VectorMeasure {
    pub fn new(dim: usize, points: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if dim == 0 || points.len() != dim * weights.len() || weights.is_empty() {
            return Err(Error::input(format!(
                "vector measure needs {} coordinates per point; got {} values for {} weights",
                dim,
                points.len(),
                weights.len()
            )));
        }
        if points.iter().any(|x| !x.is_finite()) {
            return Err(Error::input("support points must be finite"));
        }
        if weights.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
            return Err(Error::input("weights must be non-negative"));
        }
        check_mass(weights.iter().sum())?;
        Ok(VectorMeasure {
            dim,
            points,
            weights,
        })
    }

    pub fn dirac(point: &[f64]) -> Result<Self> {
        Self::new(point.len(), point.to_vec(), vec![1.0])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i * self.dim..(i + 1) * self.dim]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// The pushforward `θ#μ` under `v ↦ θᵀv`.
    pub fn project(&self, theta: &[f64]) -> Result<DiscreteMeasure> {
        if theta.len() != self.dim {
            return Err(Error::input(format!(
                "direction has dimension {} but the measure lives in dimension {}",
                theta.len(),
                self.dim
            )));
        }
        let support = (0..self.len())
            .map(|i| dot(self.point(i), theta))
            .collect();
        DiscreteMeasure::new(support, self.weights.clone())
    }
}

/// Inner product; a single coordinate returns its product unchanged (sign of zero included).
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    let mut terms = a.iter().zip(b).map(|(x, y)| x * y);
    let first = terms.next().unwrap_or(0.0);
    terms.fold(first, |acc, v| acc + v)
}
