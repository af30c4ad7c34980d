//! Datasets: loading, standardization, splitting and synthetic generators.

mod io;
pub mod rng;
mod split;
mod standardize;
mod synth;

pub use io::{load_csv, load_libsvm, write_csv, write_libsvm, LabelColumn};
pub use split::{split, split_indices, SplitSpec};
pub use standardize::{apply_standardization, standardize, Standardization};
pub use synth::{
    make_gaussians_with_outliers, make_random_dense, make_two_moons, GaussianOutlierSpec,
};

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Feature matrix with ±1 labels.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub features: Matrix,
    pub labels: Vec<f64>,
    pub feature_names: Option<Vec<String>>,
    /// Statistics applied to `features`, if any.
    pub standardization: Option<Standardization>,
}

impl Dataset {
    pub fn new(features: Matrix, labels: Vec<f64>) -> Result<Self> {
        if features.rows() != labels.len() {
            return Err(Error::invalid(format!(
                "{} feature rows but {} labels",
                features.rows(),
                labels.len()
            )));
        }
        if let Some(i) = labels.iter().position(|&y| y != 1.0 && y != -1.0) {
            return Err(Error::invalid(format!(
                "label {} at row {i} is not +1 or -1",
                labels[i]
            )));
        }
        Ok(Dataset {
            features,
            labels,
            feature_names: None,
            standardization: None,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.features.cols()
    }

    /// `(negatives, positives)`.
    pub fn class_counts(&self) -> (usize, usize) {
        let pos = self.labels.iter().filter(|&&y| y > 0.0).count();
        (self.len() - pos, pos)
    }

    pub fn subset(&self, indices: &[usize]) -> Dataset {
        Dataset {
            features: self.features.select_rows(indices),
            labels: indices.iter().map(|&i| self.labels[i]).collect(),
            feature_names: self.feature_names.clone(),
            standardization: self.standardization.clone(),
        }
    }

    /// FNV-1a over the bit patterns of features and labels. Used to tag which
    /// data a set of standardization statistics was fitted on.
    pub fn fingerprint(&self) -> u64 {
        const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
        const PRIME: u64 = 0x0000_0100_0000_01b3;
        let mut h = OFFSET;
        let mut eat = |v: u64| {
            for b in v.to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(PRIME);
            }
        };
        eat(self.features.rows() as u64);
        eat(self.features.cols() as u64);
        for v in self.features.as_slice() {
            eat(v.to_bits());
        }
        for y in &self.labels {
            eat(y.to_bits());
        }
        h
    }
}
