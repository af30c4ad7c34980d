use std::fmt::Write as _;

use crate::data::Standardization;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::solver::SvmModel;

/// Decision scores sampled on a regular 2-D grid in raw feature coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryGrid {
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
    pub resolution: usize,
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    /// `scores.get(j, i)` is the score at `(xs[i], ys[j])`.
    pub scores: Matrix,
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        1 => vec![lo],
        _ => (0..n)
            .map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64)
            .collect(),
    }
}

impl BoundaryGrid {
    /// `x,y,score` rows, x varying fastest.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,y,score\n");
        for (j, y) in self.ys.iter().enumerate() {
            for (i, x) in self.xs.iter().enumerate() {
                let _ = writeln!(out, "{x},{y},{}", self.scores.get(j, i));
            }
        }
        out
    }

    pub fn max_abs_score(&self) -> f64 {
        self.scores.max_abs()
    }

    /// Largest pointwise score difference against a grid over the same nodes.
    pub fn max_abs_difference(&self, other: &BoundaryGrid) -> Result<f64> {
        if self.xs != other.xs || self.ys != other.ys {
            return Err(Error::invalid("boundary grids cover different nodes"));
        }
        Ok(self
            .scores
            .as_slice()
            .iter()
            .zip(other.scores.as_slice())
            .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs())))
    }
}

/// Evaluates a 2-D model on a `resolution x resolution` grid. Nodes are
/// mapped through `stats` first, since the model lives in standardized space.
pub fn export_boundary(
    model: &SvmModel,
    stats: &Standardization,
    x_range: (f64, f64),
    y_range: (f64, f64),
    resolution: usize,
) -> Result<BoundaryGrid> {
    if model.n_features() != 2 {
        return Err(Error::config(format!(
            "boundary export needs a 2-D model, this one has {} features",
            model.n_features()
        )));
    }
    if stats.dim() != 2 {
        return Err(Error::config("standardization statistics must be 2-D"));
    }
    if resolution == 0 {
        return Err(Error::config("resolution must be >= 1"));
    }
    let ranges_ok = [x_range.0, x_range.1, y_range.0, y_range.1]
        .iter()
        .all(|v| v.is_finite());
    if !ranges_ok {
        return Err(Error::config("grid ranges must be finite"));
    }
    let xs = linspace(x_range.0, x_range.1, resolution);
    let ys = linspace(y_range.0, y_range.1, resolution);
    let mut nodes = Matrix::zeros(resolution * resolution, 2);
    for (j, &y) in ys.iter().enumerate() {
        for (i, &x) in xs.iter().enumerate() {
            let row = nodes.row_mut(j * resolution + i);
            row[0] = x;
            row[1] = y;
            stats.transform_row(row);
        }
    }
    let dv = model.decision_function(&nodes)?;
    Ok(BoundaryGrid {
        x_range,
        y_range,
        resolution,
        xs,
        ys,
        scores: Matrix::from_vec(resolution, resolution, dv.scores)?,
    })
}
