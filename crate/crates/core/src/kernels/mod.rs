//! Kernel functions.
//!
//! The amnesia-weighted kernel is
//!
//! ```text
//! K(x, y) = w(x) w(y) (1 + |phi(x) - phi(y)|^2 / lambda)^-(1 + s)
//! w(x)    = exp(-eta |x|^2)
//! phi(x)  = arcsinh(x)   (elementwise)
//! ```
//!
//! i.e. a rational-quadratic core on a compressed coordinate system, rescaled by
//! a per-point weight that decays with distance from the origin. The Gaussian RBF
//! `exp(-gamma |x - y|^2)` is provided as the baseline.

mod gram;
mod psd;

pub use gram::{cross_gram, gram, GramMatrix};
pub use psd::{check_psd, check_symmetric_psd, PsdReport, DEFAULT_PSD_TOL};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Coordinate map applied before distances are taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Deformation {
    #[default]
    Arcsinh,
    /// No deformation; used for ablations.
    Identity,
}

impl Deformation {
    #[inline]
    pub fn apply(self, v: f64) -> f64 {
        match self {
            Deformation::Arcsinh => v.asinh(),
            Deformation::Identity => v,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Deformation::Arcsinh => "arcsinh",
            Deformation::Identity => "identity",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "arcsinh" => Ok(Deformation::Arcsinh),
            "identity" => Ok(Deformation::Identity),
            other => Err(Error::config(format!(
                "unknown deformation '{other}' (expected arcsinh or identity)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AwfkParams {
    s: f64,
    lambda: f64,
    eta: f64,
    #[serde(default)]
    deformation: Deformation,
}

impl AwfkParams {
    /// Validates `0 < s <= 1`, `lambda > 0` and `eta >= 0`.
    pub fn new(s: f64, lambda: f64, eta: f64) -> Result<Self> {
        if !(s > 0.0 && s <= 1.0) {
            return Err(Error::config(format!(
                "fractional order s must lie in (0, 1], got {s}"
            )));
        }
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::config(format!(
                "scale lambda must be finite and > 0, got {lambda}"
            )));
        }
        if !(eta >= 0.0 && eta.is_finite()) {
            return Err(Error::config(format!(
                "amnesia rate eta must be finite and >= 0, got {eta}"
            )));
        }
        Ok(AwfkParams {
            s,
            lambda,
            eta,
            deformation: Deformation::Arcsinh,
        })
    }

    pub fn with_deformation(mut self, deformation: Deformation) -> Self {
        self.deformation = deformation;
        self
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn deformation(&self) -> Deformation {
        self.deformation
    }

    /// Same parameters with the amnesia weight switched off.
    pub fn unweighted(&self) -> Self {
        AwfkParams { eta: 0.0, ..*self }
    }

    #[inline]
    pub(crate) fn core_from_sq_dist(&self, sq_dist: f64) -> f64 {
        (1.0 + sq_dist / self.lambda).powf(-(1.0 + self.s))
    }
}

impl Default for AwfkParams {
    /// `s = 0.5`, `lambda = 3`, `eta = 1e-4`.
    fn default() -> Self {
        AwfkParams::new(0.5, 3.0, 1e-4).expect("default parameters are valid")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RbfParams {
    gamma: f64,
}

impl RbfParams {
    pub fn new(gamma: f64) -> Result<Self> {
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(Error::config(format!(
                "gamma must be finite and > 0, got {gamma}"
            )));
        }
        Ok(RbfParams { gamma })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// `gamma = 1 / (D * mean per-feature population variance)`, falling back
    /// to 1 when every feature is constant.
    pub fn scale_heuristic(data: &Matrix) -> Result<Self> {
        let (n, d) = (data.rows(), data.cols());
        if n == 0 || d == 0 {
            return Err(Error::invalid("gamma heuristic needs a non-empty matrix"));
        }
        let mut total_var = 0.0;
        for k in 0..d {
            let mean = (0..n).map(|i| data.get(i, k)).sum::<f64>() / n as f64;
            total_var += (0..n).map(|i| (data.get(i, k) - mean).powi(2)).sum::<f64>() / n as f64;
        }
        let mean_var = total_var / d as f64;
        if mean_var > 0.0 {
            RbfParams::new(1.0 / (d as f64 * mean_var))
        } else {
            RbfParams::new(1.0)
        }
    }
}

/// Which kernel to evaluate, with its validated hyperparameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kernel", rename_all = "lowercase")]
pub enum KernelSpec {
    Rbf(RbfParams),
    Awfk(AwfkParams),
}

impl KernelSpec {
    pub fn name(&self) -> &'static str {
        match self {
            KernelSpec::Rbf(_) => "rbf",
            KernelSpec::Awfk(_) => "awfk",
        }
    }

    pub fn eval(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        match self {
            KernelSpec::Rbf(p) => rbf(x, y, p),
            KernelSpec::Awfk(p) => awfk(x, y, p),
        }
    }
}

impl std::fmt::Display for KernelSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            KernelSpec::Rbf(p) => write!(f, "rbf(gamma={})", p.gamma),
            KernelSpec::Awfk(p) => write!(
                f,
                "awfk(s={}, lambda={}, eta={}, phi={})",
                p.s,
                p.lambda,
                p.eta,
                p.deformation.name()
            ),
        }
    }
}

fn ensure_finite(x: &[f64], what: &str) -> Result<()> {
    match x.iter().position(|v| !v.is_finite()) {
        None => Ok(()),
        Some(k) => Err(Error::invalid(format!(
            "{what} has non-finite coordinate {} at index {k}",
            x[k]
        ))),
    }
}

fn ensure_same_dim(x: &[f64], y: &[f64]) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::invalid(format!(
            "dimension mismatch: {} vs {}",
            x.len(),
            y.len()
        )));
    }
    Ok(())
}

#[inline]
pub(crate) fn sq_dist(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum()
}

#[inline]
pub(crate) fn sq_norm(x: &[f64]) -> f64 {
    x.iter().map(|a| a * a).sum()
}

/// Elementwise `arcsinh`.
pub fn deform(x: &[f64]) -> Result<Vec<f64>> {
    ensure_finite(x, "input")?;
    Ok(x.iter().map(|v| v.asinh()).collect())
}

/// `exp(-eta |x|^2)`.
pub fn amnesia_weight(x: &[f64], eta: f64) -> Result<f64> {
    ensure_finite(x, "input")?;
    if !(eta >= 0.0 && eta.is_finite()) {
        return Err(Error::invalid(format!("eta must be >= 0, got {eta}")));
    }
    Ok((-eta * sq_norm(x)).exp())
}

/// Amnesia-weighted kernel value. Lies in `(0, 1]` unless the weight underflows
/// for points extremely far from the origin.
pub fn awfk(x: &[f64], y: &[f64], p: &AwfkParams) -> Result<f64> {
    ensure_same_dim(x, y)?;
    ensure_finite(x, "x")?;
    ensure_finite(y, "y")?;
    let d2: f64 = x
        .iter()
        .zip(y)
        .map(|(&a, &b)| {
            let diff = p.deformation.apply(a) - p.deformation.apply(b);
            diff * diff
        })
        .sum();
    let wx = (-p.eta * sq_norm(x)).exp();
    let wy = (-p.eta * sq_norm(y)).exp();
    Ok(wx * wy * p.core_from_sq_dist(d2))
}

pub fn rbf(x: &[f64], y: &[f64], p: &RbfParams) -> Result<f64> {
    ensure_same_dim(x, y)?;
    ensure_finite(x, "x")?;
    ensure_finite(y, "y")?;
    Ok((-p.gamma * sq_dist(x, y)).exp())
}
