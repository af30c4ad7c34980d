//! Soft-margin C-SVM trained in the dual by Sequential Minimal Optimization.
//!
//! The dual problem solved is
//!
//! ```text
//! maximize   sum_i a_i - 1/2 sum_ij a_i a_j y_i y_j K_ij
//! subject to 0 <= a_i <= C,  sum_i a_i y_i = 0
//! ```
//!
//! over a precomputed kernel matrix. See [`smo`] for the optimizer itself.

mod model;
mod serialize;
pub mod smo;

pub use model::{predict, train, DecisionValues, SvmModel, TrainingMeta};
pub use serialize::{read_model, write_model, ModelFile, FORMAT_HEADER};
pub use smo::{dual_objective, solve, DualSolution};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvmConfig {
    /// Box constraint C.
    pub c: f64,
    /// Stop when the maximal KKT violation gap drops below this.
    pub kkt_tol: f64,
    /// Cap on pair updates.
    pub max_iter: u64,
    /// Temporarily drop bound variables that cannot enter the working set.
    pub shrink: bool,
}

impl Default for SvmConfig {
    fn default() -> Self {
        SvmConfig {
            c: 1.0,
            kkt_tol: 1e-3,
            max_iter: 10_000_000,
            shrink: true,
        }
    }
}

impl SvmConfig {
    pub fn with_c(c: f64) -> Self {
        SvmConfig {
            c,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.c > 0.0 && self.c.is_finite()) {
            return Err(Error::config(format!("C must be finite and > 0, got {}", self.c)));
        }
        if !(self.kkt_tol > 0.0 && self.kkt_tol.is_finite()) {
            return Err(Error::config(format!(
                "KKT tolerance must be > 0, got {}",
                self.kkt_tol
            )));
        }
        if self.max_iter == 0 {
            return Err(Error::config("max_iter must be >= 1"));
        }
        Ok(())
    }
}

/// Checks that labels are all ±1.
pub(crate) fn validate_labels(labels: &[f64]) -> Result<()> {
    match labels.iter().position(|&y| y != 1.0 && y != -1.0) {
        None => Ok(()),
        Some(i) => Err(Error::invalid(format!(
            "label {} at index {i} is not +1 or -1",
            labels[i]
        ))),
    }
}
