use std::fmt::Write as _;

use rayon::prelude::*;

use super::cv::cross_validate;
use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::kernels::{AwfkParams, KernelSpec, RbfParams};

/// Kernel family swept by a grid, with the values used for parameters that
/// have no axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelFamily {
    Awfk(AwfkParams),
    Rbf(RbfParams),
}

impl KernelFamily {
    fn accepts(&self, name: &str) -> bool {
        match self {
            KernelFamily::Awfk(_) => matches!(name, "s" | "lambda" | "eta"),
            KernelFamily::Rbf(_) => name == "gamma",
        }
    }

    /// Kernel with the named overrides applied; validation errors propagate.
    pub fn instantiate(&self, assignment: &[(&str, f64)]) -> Result<KernelSpec> {
        match self {
            KernelFamily::Awfk(base) => {
                let (mut s, mut lambda, mut eta) = (base.s(), base.lambda(), base.eta());
                for &(name, v) in assignment {
                    match name {
                        "s" => s = v,
                        "lambda" => lambda = v,
                        "eta" => eta = v,
                        _ => {}
                    }
                }
                Ok(KernelSpec::Awfk(
                    AwfkParams::new(s, lambda, eta)?.with_deformation(base.deformation()),
                ))
            }
            KernelFamily::Rbf(base) => {
                let mut gamma = base.gamma();
                for &(name, v) in assignment {
                    if name == "gamma" {
                        gamma = v;
                    }
                }
                Ok(KernelSpec::Rbf(RbfParams::new(gamma)?))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub name: String,
    pub values: Vec<f64>,
}

impl Axis {
    pub fn new(name: impl Into<String>, values: Vec<f64>) -> Self {
        Axis {
            name: name.into(),
            values,
        }
    }
}

/// Mean cross-validated accuracy over a Cartesian grid. The last axis is
/// always `c`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridResult {
    pub axes: Vec<Axis>,
    /// Row-major over `axes`.
    pub scores: Vec<f64>,
    /// Coordinates of the best cell; ties go to the lexicographically
    /// smallest coordinates.
    pub best_cell: Vec<usize>,
}

impl GridResult {
    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.values.len()).collect()
    }

    pub fn flat_index(&self, coords: &[usize]) -> usize {
        coords
            .iter()
            .zip(&self.axes)
            .fold(0, |acc, (&c, a)| acc * a.values.len() + c)
    }

    pub fn coords(&self, mut flat: usize) -> Vec<usize> {
        let mut out = vec![0; self.axes.len()];
        for (slot, axis) in out.iter_mut().zip(&self.axes).rev() {
            *slot = flat % axis.values.len();
            flat /= axis.values.len();
        }
        out
    }

    pub fn score(&self, coords: &[usize]) -> f64 {
        self.scores[self.flat_index(coords)]
    }

    pub fn best_score(&self) -> f64 {
        self.score(&self.best_cell)
    }

    /// Parameter values of the best cell as `(name, value)` pairs.
    pub fn best_params(&self) -> Vec<(String, f64)> {
        self.axes
            .iter()
            .zip(&self.best_cell)
            .map(|(a, &i)| (a.name.clone(), a.values[i]))
            .collect()
    }

    /// One row per cell: every axis value then `mean_accuracy`.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for a in &self.axes {
            out.push_str(&a.name);
            out.push(',');
        }
        out.push_str("mean_accuracy\n");
        for (flat, score) in self.scores.iter().enumerate() {
            for (a, &i) in self.axes.iter().zip(&self.coords(flat)) {
                let _ = write!(out, "{},", a.values[i]);
            }
            let _ = writeln!(out, "{score}");
        }
        out
    }

    /// `(s, eta, mean_accuracy)` rows for a heatmap built by
    /// [`sensitivity_heatmap`].
    pub fn heatmap_csv(&self) -> String {
        let mut out = String::from("s,eta,mean_accuracy\n");
        let (s_axis, eta_axis) = (&self.axes[0], &self.axes[1]);
        for (i, s) in s_axis.values.iter().enumerate() {
            for (j, eta) in eta_axis.values.iter().enumerate() {
                let _ = writeln!(out, "{s},{eta},{}", self.score(&[i, j, 0]));
            }
        }
        out
    }
}

/// Exhaustive sweep of `axes` x `c_values`, each cell scored by stratified
/// k-fold cross-validation with the same fold seed. Cells run in parallel.
pub fn grid_search(
    ds: &Dataset,
    family: &KernelFamily,
    axes: &[Axis],
    c_values: &[f64],
    k_folds: usize,
    seed: u64,
) -> Result<GridResult> {
    for a in axes {
        if a.values.is_empty() {
            return Err(Error::config(format!("axis '{}' has no values", a.name)));
        }
        if !family.accepts(&a.name) {
            return Err(Error::config(format!(
                "axis '{}' is not a parameter of this kernel family",
                a.name
            )));
        }
    }
    if c_values.is_empty() {
        return Err(Error::config("no values for C"));
    }
    if let Some(bad) = c_values.iter().find(|c| !(**c > 0.0 && c.is_finite())) {
        return Err(Error::config(format!("C must be > 0, got {bad}")));
    }
    let mut all_axes = axes.to_vec();
    all_axes.push(Axis::new("c", c_values.to_vec()));

    let mut result = GridResult {
        axes: all_axes,
        scores: Vec::new(),
        best_cell: Vec::new(),
    };
    let n_cells: usize = result.shape().iter().product();

    // Validate every kernel before spending time on any cell.
    let cells: Vec<(KernelSpec, f64)> = (0..n_cells)
        .map(|flat| {
            let coords = result.coords(flat);
            let (kernel_coords, c_coord) = coords.split_at(axes.len());
            let assignment: Vec<(&str, f64)> = axes
                .iter()
                .zip(kernel_coords)
                .map(|(a, &i)| (a.name.as_str(), a.values[i]))
                .collect();
            Ok((family.instantiate(&assignment)?, c_values[c_coord[0]]))
        })
        .collect::<Result<_>>()?;

    result.scores = cells
        .par_iter()
        .map(|(spec, c)| cross_validate(ds, spec, *c, k_folds, seed).map(|r| r.mean_accuracy))
        .collect::<Result<Vec<f64>>>()?;

    let mut best = 0;
    for (i, &s) in result.scores.iter().enumerate() {
        if s > result.scores[best] {
            best = i;
        }
    }
    result.best_cell = result.coords(best);
    Ok(result)
}

/// `(s, eta)` slice of an AWFK grid at fixed `lambda` and `c`.
#[allow(clippy::too_many_arguments)]
pub fn sensitivity_heatmap(
    ds: &Dataset,
    s_values: &[f64],
    eta_values: &[f64],
    lambda: f64,
    c: f64,
    k_folds: usize,
    seed: u64,
) -> Result<GridResult> {
    let base = AwfkParams::new(0.5, lambda, 0.0)?;
    grid_search(
        ds,
        &KernelFamily::Awfk(base),
        &[
            Axis::new("s", s_values.to_vec()),
            Axis::new("eta", eta_values.to_vec()),
        ],
        &[c],
        k_folds,
        seed,
    )
}
