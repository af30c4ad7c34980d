use nalgebra::{DMatrix, SymmetricEigen};

use super::GramMatrix;
use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Relative eigenvalue tolerance used for PSD checks: a matrix passes when
/// `min_eigenvalue >= -tol * N * max|entry|`.
pub const DEFAULT_PSD_TOL: f64 = 1e-8;

const SWEEPS_PER_ROW: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsdReport {
    pub min_eigenvalue: f64,
    /// `-tol * N * max|entry|`.
    pub threshold: f64,
    pub is_psd: bool,
}

pub fn check_psd(g: &GramMatrix, tol: f64) -> Result<PsdReport> {
    check_symmetric_psd(g.values(), tol)
}

/// Smallest eigenvalue of a symmetric matrix, compared against the relative
/// tolerance band.
pub fn check_symmetric_psd(m: &Matrix, tol: f64) -> Result<PsdReport> {
    let n = m.rows();
    if n == 0 || m.cols() != n {
        return Err(Error::invalid(format!(
            "expected a non-empty square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    if !(tol >= 0.0) {
        return Err(Error::invalid(format!("tolerance must be >= 0, got {tol}")));
    }
    m.ensure_finite()?;
    for i in 0..n {
        for j in (i + 1)..n {
            if m.get(i, j) != m.get(j, i) {
                return Err(Error::invalid(format!(
                    "matrix is not symmetric at ({i}, {j})"
                )));
            }
        }
    }

    let max_iter = SWEEPS_PER_ROW * n.max(16);
    let dense = DMatrix::from_row_slice(n, n, m.as_slice());
    let eig = SymmetricEigen::try_new(dense, f64::EPSILON, max_iter)
        .ok_or(Error::EigenNonConvergence {
            iterations: max_iter,
        })?;
    let min_eigenvalue = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    let threshold = -tol * n as f64 * m.max_abs();
    Ok(PsdReport {
        min_eigenvalue,
        threshold,
        is_psd: min_eigenvalue >= threshold,
    })
}
