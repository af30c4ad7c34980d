use std::sync::Arc;

use rayon::prelude::*;

use super::{sq_dist, sq_norm, KernelSpec};
use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Symmetric kernel matrix over one point set, tagged with the kernel and the
/// rows it was built from.
#[derive(Debug, Clone)]
pub struct GramMatrix {
    values: Matrix,
    spec: KernelSpec,
    symmetrized: bool,
    source: Arc<Matrix>,
}

impl GramMatrix {
    pub fn n(&self) -> usize {
        self.values.rows()
    }

    pub fn values(&self) -> &Matrix {
        &self.values
    }

    pub fn spec(&self) -> &KernelSpec {
        &self.spec
    }

    pub fn is_symmetrized(&self) -> bool {
        self.symmetrized
    }

    /// Rows the matrix was evaluated on.
    pub fn source(&self) -> &Matrix {
        &self.source
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values.get(i, j)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.max_abs()
    }
}

/// Per-row quantities that only depend on one point.
struct Prepared {
    /// Deformed coordinates (AWFK) or the raw rows (RBF).
    coords: Matrix,
    /// Amnesia weights; empty for RBF.
    weights: Vec<f64>,
}

fn prepare(data: &Matrix, spec: &KernelSpec) -> Prepared {
    match spec {
        KernelSpec::Rbf(_) => Prepared {
            coords: data.clone(),
            weights: Vec::new(),
        },
        KernelSpec::Awfk(p) => {
            let mut coords = data.clone();
            for i in 0..coords.rows() {
                for v in coords.row_mut(i) {
                    *v = p.deformation().apply(*v);
                }
            }
            let weights = data
                .iter_rows()
                .map(|r| (-p.eta() * sq_norm(r)).exp())
                .collect();
            Prepared { coords, weights }
        }
    }
}

#[inline]
fn entry(spec: &KernelSpec, a: &Prepared, i: usize, b: &Prepared, j: usize) -> f64 {
    match spec {
        KernelSpec::Rbf(p) => (-p.gamma() * sq_dist(a.coords.row(i), b.coords.row(j))).exp(),
        KernelSpec::Awfk(p) => {
            let d2 = sq_dist(a.coords.row(i), b.coords.row(j));
            a.weights[i] * b.weights[j] * p.core_from_sq_dist(d2)
        }
    }
}

fn fill(rows: &Prepared, cols: &Prepared, spec: &KernelSpec) -> Matrix {
    let (m, n) = (rows.coords.rows(), cols.coords.rows());
    let mut out = vec![0.0; m * n];
    if n > 0 {
        out.par_chunks_mut(n).enumerate().for_each(|(i, row)| {
            for (j, slot) in row.iter_mut().enumerate() {
                *slot = entry(spec, rows, i, cols, j);
            }
        });
    }
    Matrix::from_vec(m, n, out).expect("shape computed above")
}

/// Full `N x N` kernel matrix over the rows of `data`, followed by a
/// symmetrization pass so `K[i][j] == K[j][i]` bit for bit.
///
/// Rows are evaluated in parallel; each entry is computed independently so the
/// result does not depend on the thread count.
pub fn gram(data: &Matrix, spec: &KernelSpec) -> Result<GramMatrix> {
    if data.rows() == 0 {
        return Err(Error::invalid("gram matrix needs at least one row"));
    }
    data.ensure_finite()?;
    let prepared = prepare(data, spec);
    let mut values = fill(&prepared, &prepared, spec);
    let n = values.rows();
    for i in 0..n {
        for j in (i + 1)..n {
            let avg = 0.5 * (values.get(i, j) + values.get(j, i));
            values.set(i, j, avg);
            values.set(j, i, avg);
        }
    }
    Ok(GramMatrix {
        values,
        spec: *spec,
        symmetrized: true,
        source: Arc::new(data.clone()),
    })
}

/// Rectangular kernel matrix with entry `(i, j) = k(test_i, train_j)`.
pub fn cross_gram(train: &Matrix, test: &Matrix, spec: &KernelSpec) -> Result<Matrix> {
    if test.rows() > 0 && train.rows() > 0 && train.cols() != test.cols() {
        return Err(Error::invalid(format!(
            "dimension mismatch: train has {} features, test has {}",
            train.cols(),
            test.cols()
        )));
    }
    train.ensure_finite()?;
    test.ensure_finite()?;
    let a = prepare(test, spec);
    let b = prepare(train, spec);
    Ok(fill(&a, &b, spec))
}
