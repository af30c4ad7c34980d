use super::Dataset;
use crate::error::{Error, Result};

/// Per-feature `(mean, std)` fitted on one dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct Standardization {
    pub mean: Vec<f64>,
    pub std: Vec<f64>,
    /// [`Dataset::fingerprint`] of the data the statistics were fitted on.
    pub fitted_on: u64,
}

impl Standardization {
    pub fn identity(dim: usize) -> Self {
        Standardization {
            mean: vec![0.0; dim],
            std: vec![1.0; dim],
            fitted_on: 0,
        }
    }

    pub fn dim(&self) -> usize {
        self.mean.len()
    }

    pub fn transform_row(&self, row: &mut [f64]) {
        for ((v, m), s) in row.iter_mut().zip(&self.mean).zip(&self.std) {
            *v = (*v - m) / s;
        }
    }
}

/// Fits zero-mean, unit-variance scaling (population standard deviation) and
/// applies it. Zero-variance features get the identity transform and a
/// recorded standard deviation of 1.
pub fn standardize(ds: &Dataset) -> Result<Dataset> {
    let n = ds.len();
    if n < 2 {
        return Err(Error::config(format!(
            "standardization needs at least 2 rows, got {n}"
        )));
    }
    let d = ds.dim();
    let mut mean = vec![0.0; d];
    for row in ds.features.iter_rows() {
        for (m, v) in mean.iter_mut().zip(row) {
            *m += v;
        }
    }
    for m in &mut mean {
        *m /= n as f64;
    }
    let mut var = vec![0.0; d];
    for row in ds.features.iter_rows() {
        for ((s, v), m) in var.iter_mut().zip(row).zip(&mean) {
            *s += (v - m) * (v - m);
        }
    }
    let mut std = Vec::with_capacity(d);
    for k in 0..d {
        let sd = (var[k] / n as f64).sqrt();
        if sd > 0.0 {
            std.push(sd);
        } else {
            mean[k] = 0.0;
            std.push(1.0);
        }
    }
    let stats = Standardization {
        mean,
        std,
        fitted_on: ds.fingerprint(),
    };
    apply_standardization(ds, &stats)
}

/// Transforms `ds` with statistics fitted elsewhere (typically the training split).
pub fn apply_standardization(ds: &Dataset, stats: &Standardization) -> Result<Dataset> {
    if stats.dim() != ds.dim() {
        return Err(Error::invalid(format!(
            "statistics cover {} features, dataset has {}",
            stats.dim(),
            ds.dim()
        )));
    }
    let mut out = ds.clone();
    for i in 0..out.len() {
        stats.transform_row(out.features.row_mut(i));
    }
    out.standardization = Some(stats.clone());
    Ok(out)
}
