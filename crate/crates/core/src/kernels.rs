//! One-dimensional smoothing kernels.
//!
//! Each family is evaluated in its standard form on `z`. The scaled kernel
//! `K_h(z) = K(z / h)` carries no `1/h` factor; the Nadaraya-Watson weights
//! are normalized by their own denominator.
//!
//! | family        | formula                                   | support  | ∫z²K   |
//! |---------------|-------------------------------------------|----------|--------|
//! | uniform       | 1/2                                       | [-1, 1]  | 1/3    |
//! | rectangle     | alias of uniform                          | [-1, 1]  | 1/3    |
//! | triangle      | 1 - \|z\|                                 | [-1, 1]  | 1/6    |
//! | epanechnikov  | (3/4)(1 - z²)                             | [-1, 1]  | 1/5    |
//! | tricube       | (70/81)(1 - \|z\|³)³                      | [-1, 1]  | 35/243 |
//! | gaussian      | (2π)^(-1/2) exp(-z²/2)                    | ℝ        | 1      |
//! | silverman     | (1/2) exp(-\|z\|/√2) sin(\|z\|/√2 + π/4)  | ℝ        | 0      |
//!
//! The Silverman kernel takes negative values.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Effective radius assigned to the non-compact families. Used only by the
/// boundary rule, never to truncate evaluation.
pub const NON_COMPACT_RADIUS: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelFamily {
    Uniform,
    Rectangle,
    Triangle,
    Epanechnikov,
    Tricube,
    Gaussian,
    Silverman,
}

impl KernelFamily {
    pub const ALL: [KernelFamily; 7] = [
        KernelFamily::Uniform,
        KernelFamily::Rectangle,
        KernelFamily::Triangle,
        KernelFamily::Epanechnikov,
        KernelFamily::Tricube,
        KernelFamily::Gaussian,
        KernelFamily::Silverman,
    ];

    pub fn name(self) -> &'static str {
        match self {
            KernelFamily::Uniform => "uniform",
            KernelFamily::Rectangle => "rectangle",
            KernelFamily::Triangle => "triangle",
            KernelFamily::Epanechnikov => "epanechnikov",
            KernelFamily::Tricube => "tricube",
            KernelFamily::Gaussian => "gaussian",
            KernelFamily::Silverman => "silverman",
        }
    }

    pub fn is_compact(self) -> bool {
        !matches!(self, KernelFamily::Gaussian | KernelFamily::Silverman)
    }

    /// Whether the kernel can take negative values.
    pub fn is_signed(self) -> bool {
        matches!(self, KernelFamily::Silverman)
    }

    /// Closed-form second moment ∫ z² K(z) dz.
    pub fn second_moment(self) -> f64 {
        match self {
            KernelFamily::Uniform | KernelFamily::Rectangle => 1.0 / 3.0,
            KernelFamily::Triangle => 1.0 / 6.0,
            KernelFamily::Epanechnikov => 0.2,
            KernelFamily::Tricube => 35.0 / 243.0,
            KernelFamily::Gaussian => 1.0,
            KernelFamily::Silverman => 0.0,
        }
    }

    fn default_radius(self) -> f64 {
        if self.is_compact() {
            1.0
        } else {
            NON_COMPACT_RADIUS
        }
    }

    /// Half-width of the interval integrated by [`KernelSpec::verify_moments`].
    /// The Silverman tail decays like exp(-|z|/√2), so it needs a much wider
    /// window than the Gaussian to reach 1e-5 accuracy on the second moment.
    fn quadrature_radius(self) -> f64 {
        match self {
            KernelFamily::Gaussian => 8.0,
            KernelFamily::Silverman => 48.0,
            _ => 1.0,
        }
    }

    #[inline]
    fn value(self, z: f64) -> f64 {
        let a = z.abs();
        match self {
            KernelFamily::Uniform | KernelFamily::Rectangle => {
                if a <= 1.0 {
                    0.5
                } else {
                    0.0
                }
            }
            KernelFamily::Triangle => {
                if a <= 1.0 {
                    1.0 - a
                } else {
                    0.0
                }
            }
            KernelFamily::Epanechnikov => {
                if a <= 1.0 {
                    0.75 * (1.0 - a * a)
                } else {
                    0.0
                }
            }
            KernelFamily::Tricube => {
                if a <= 1.0 {
                    let c = 1.0 - a * a * a;
                    70.0 / 81.0 * c * c * c
                } else {
                    0.0
                }
            }
            KernelFamily::Gaussian => (-0.5 * a * a).exp() / (2.0 * PI).sqrt(),
            KernelFamily::Silverman => {
                let s = a * FRAC_1_SQRT_2;
                0.5 * (-s).exp() * (s + FRAC_PI_4).sin()
            }
        }
    }
}

impl fmt::Display for KernelFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for KernelFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        KernelFamily::ALL
            .into_iter()
            .find(|k| k.name() == s.trim().to_ascii_lowercase())
            .ok_or_else(|| {
                Error::input(format!(
                    "unknown kernel '{s}' (expected one of uniform, rectangle, triangle, epanechnikov, tricube, gaussian, silverman)"
                ))
            })
    }
}

/// A kernel family together with its effective support radius `C`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelSpec {
    family: KernelFamily,
    effective_support_radius: f64,
}

impl KernelSpec {
    /// The family with its default radius: 1 for compact kernels, 4 otherwise.
    pub fn new(family: KernelFamily) -> Self {
        KernelSpec {
            family,
            effective_support_radius: family.default_radius(),
        }
    }

    /// Overrides the radius. Compact families cannot shrink below their true
    /// support, otherwise `eval` would be nonzero beyond the radius.
    pub fn with_radius(family: KernelFamily, radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::input(format!(
                "effective support radius must be positive and finite, got {radius}"
            )));
        }
        if family.is_compact() && radius < 1.0 {
            return Err(Error::input(format!(
                "{family} is supported on [-1, 1]; radius {radius} would cut it"
            )));
        }
        Ok(KernelSpec {
            family,
            effective_support_radius: radius,
        })
    }

    pub fn family(&self) -> KernelFamily {
        self.family
    }

    pub fn radius(&self) -> f64 {
        self.effective_support_radius
    }

    /// K(z) without input validation; NaN in, NaN out.
    #[inline]
    pub fn density(&self, z: f64) -> f64 {
        self.family.value(z)
    }

    pub fn eval(&self, z: f64) -> Result<f64> {
        if !z.is_finite() {
            return Err(Error::input(format!("kernel argument must be finite, got {z}")));
        }
        Ok(self.family.value(z))
    }

    pub fn eval_scaled(&self, h: f64, z: f64) -> Result<f64> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::input(format!("bandwidth must be positive, got {h}")));
        }
        self.eval(z / h)
    }

    /// Composite-Simpson moments (∫K, ∫zK, ∫z²K).
    ///
    /// The integration window is split at 0 so the kink of |z| in the
    /// compact and Silverman formulas sits on a node. Compact kernels are
    /// integrated over [-1, 1] only since they vanish outside it.
    pub fn verify_moments(&self, quad_points: usize) -> Result<(f64, f64, f64)> {
        if quad_points < 64 {
            return Err(Error::input(format!(
                "quad_points must be at least 64, got {quad_points}"
            )));
        }
        let r = self.family.quadrature_radius();
        // Intervals per half, even for Simpson.
        let n = (quad_points / 2).max(32) & !1;
        let step = r / n as f64;
        let mut m = [0.0f64; 3];
        for sign in [-1.0, 1.0] {
            for i in 0..=n {
                let z = sign * step * i as f64;
                let coeff = if i == 0 || i == n {
                    1.0
                } else if i % 2 == 1 {
                    4.0
                } else {
                    2.0
                };
                let k = self.density(z);
                m[0] += coeff * k;
                m[1] += coeff * z * k;
                m[2] += coeff * z * z * k;
            }
        }
        let scale = step / 3.0;
        Ok((m[0] * scale, m[1] * scale, m[2] * scale))
    }
}

impl Default for KernelSpec {
    fn default() -> Self {
        KernelSpec::new(KernelFamily::Gaussian)
    }
}

impl From<KernelFamily> for KernelSpec {
    fn from(family: KernelFamily) -> Self {
        KernelSpec::new(family)
    }
}

impl FromStr for KernelSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(KernelSpec::new(s.parse()?))
    }
}

impl fmt::Display for KernelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn k(f: KernelFamily) -> KernelSpec {
        KernelSpec::new(f)
    }

    #[test]
    fn point_values() {
        assert_eq!(k(KernelFamily::Uniform).eval(0.0).unwrap(), 0.5);
        assert_eq!(k(KernelFamily::Triangle).eval(2.0).unwrap(), 0.0);
        let g = k(KernelFamily::Gaussian).eval(0.0).unwrap();
        assert!((g - 0.398_942_280_401_432_7).abs() < 1e-15);
    }

    #[test]
    fn scaled_values() {
        assert_eq!(k(KernelFamily::Uniform).eval_scaled(0.5, 0.25).unwrap(), 0.5);
        assert_eq!(k(KernelFamily::Triangle).eval_scaled(0.1, 0.2).unwrap(), 0.0);
        let g = k(KernelFamily::Gaussian).eval_scaled(2.0, 2.0).unwrap();
        assert!((g - 0.241_970_724_519_143_37).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(k(KernelFamily::Gaussian).eval(f64::NAN).is_err());
        assert!(k(KernelFamily::Gaussian).eval(f64::INFINITY).is_err());
        assert!(k(KernelFamily::Uniform).eval_scaled(0.0, 1.0).is_err());
        assert!(k(KernelFamily::Uniform).eval_scaled(-1.0, 1.0).is_err());
        assert!(k(KernelFamily::Uniform).verify_moments(63).is_err());
        assert!(KernelSpec::with_radius(KernelFamily::Triangle, 0.5).is_err());
        assert!(KernelSpec::with_radius(KernelFamily::Gaussian, 0.0).is_err());
        assert!(KernelSpec::with_radius(KernelFamily::Gaussian, 2.0).is_ok());
    }

    #[test]
    fn moments_of_named_examples() {
        let (m0, m1, m2) = k(KernelFamily::Epanechnikov).verify_moments(1024).unwrap();
        assert!((m0 - 1.0).abs() < 1e-6 && m1.abs() < 1e-6 && (m2 - 0.2).abs() < 1e-6);
        let (m0, m1, m2) = k(KernelFamily::Gaussian).verify_moments(4096).unwrap();
        assert!((m0 - 1.0).abs() < 1e-6 && m1.abs() < 1e-6 && (m2 - 1.0).abs() < 1e-6);
        let (m0, m1, m2) = k(KernelFamily::Uniform).verify_moments(1024).unwrap();
        assert!((m0 - 1.0).abs() < 1e-6 && m1.abs() < 1e-6 && (m2 - 1.0 / 3.0).abs() < 1e-6);
    }

    #[test]
    fn even_and_supported() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for fam in KernelFamily::ALL {
            let spec = k(fam);
            for _ in 0..1000 {
                let z: f64 = rng.random_range(-6.0..6.0);
                assert_eq!(spec.density(z), spec.density(-z), "{fam} at {z}");
                if fam.is_compact() && z.abs() > spec.radius() {
                    assert_eq!(spec.density(z), 0.0);
                }
                if !fam.is_signed() {
                    assert!(spec.density(z) >= 0.0);
                }
            }
        }
        // First sign change of the Silverman kernel is at |z| = 3π√2/4 ≈ 3.33.
        assert!(k(KernelFamily::Silverman).density(4.0) < 0.0);
    }

    #[test]
    fn parses_lowercase_names() {
        for fam in KernelFamily::ALL {
            assert_eq!(fam.name().parse::<KernelFamily>().unwrap(), fam);
        }
        assert!("box".parse::<KernelFamily>().is_err());
    }
}
