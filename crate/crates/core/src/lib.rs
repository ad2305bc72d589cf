//! Nadaraya-Watson estimation of conditional distributions for locally
//! stationary time series, with exact one-dimensional Wasserstein and
//! Monte Carlo sliced Wasserstein diagnostics.
//!
//! Modules:
//! - [`kernels`]: smoothing kernels and their moments
//! - [`simulate`]: time-varying autoregressive generators, Gaussian smoothing, lag embedding
//! - [`measure`]: discrete measures and step CDFs
//! - [`estimator`]: weights, conditional CDF / measure / mean
//! - [`otmetrics`]: W1, W_r, sliced W1
//! - [`harness`]: replication experiments, convergence study, fit report
//! - [`io`] and [`cli`]: file formats and the command line

pub mod cli;
pub mod error;
pub mod estimator;
pub mod harness;
pub mod io;
pub mod kernels;
pub mod measure;
pub mod otmetrics;
pub mod rng;
pub mod simulate;

pub use error::{Error, Result};
pub use estimator::{
    conditional_cdf, conditional_mean, conditional_measure, density_diagnostic, nw_weights,
    projected_conditional_cdf, NwParams, WeightVector,
};
pub use kernels::{KernelFamily, KernelSpec};
pub use measure::{DiscreteMeasure, StepCdf, VectorMeasure};
pub use otmetrics::{sample_sphere, sliced_w1, w1_cdf, w1_discrete, wr_discrete, SlicedEstimate};
pub use simulate::{
    gaussian_smooth_replicate, lag_embed, simulate, simulate_stationary_at, true_conditional_mean,
    LaggedData, ProcessFamily, ProcessSpec, Series,
};
