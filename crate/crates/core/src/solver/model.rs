use super::{smo, validate_labels, SvmConfig};
use crate::error::{Error, Result};
use crate::kernels::{cross_gram, GramMatrix, KernelSpec};
use crate::matrix::Matrix;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrainingMeta {
    pub iterations: u64,
    /// Final dual objective.
    pub objective: f64,
    pub converged: bool,
    pub c: f64,
}

/// Trained binary classifier. Only rows with nonzero multipliers are kept.
#[derive(Debug, Clone, PartialEq)]
pub struct SvmModel {
    pub support_vectors: Matrix,
    /// `alpha_i * y_i` per support vector.
    pub dual_coefs: Vec<f64>,
    pub bias: f64,
    pub spec: KernelSpec,
    pub meta: TrainingMeta,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct DecisionValues {
    pub scores: Vec<f64>,
    /// `+1` where `score >= 0`, else `-1`.
    pub labels: Vec<f64>,
}

impl DecisionValues {
    pub fn from_scores(scores: Vec<f64>) -> Self {
        let labels = scores
            .iter()
            .map(|&s| if s >= 0.0 { 1.0 } else { -1.0 })
            .collect();
        DecisionValues { scores, labels }
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }
}

pub fn train(gram: &GramMatrix, labels: &[f64], cfg: &SvmConfig) -> Result<SvmModel> {
    cfg.validate()?;
    if labels.len() != gram.n() {
        return Err(Error::invalid(format!(
            "{} labels for a {}x{} gram matrix",
            labels.len(),
            gram.n(),
            gram.n()
        )));
    }
    validate_labels(labels)?;
    if !labels.contains(&1.0) || !labels.contains(&-1.0) {
        return Err(Error::invalid("training labels must contain both classes"));
    }

    let sol = smo::solve(gram.values(), labels, cfg);
    let sv: Vec<usize> = (0..labels.len()).filter(|&i| sol.alphas[i] > 0.0).collect();
    Ok(SvmModel {
        support_vectors: gram.source().select_rows(&sv),
        dual_coefs: sv.iter().map(|&i| sol.alphas[i] * labels[i]).collect(),
        bias: sol.bias,
        spec: *gram.spec(),
        meta: TrainingMeta {
            iterations: sol.iterations,
            objective: sol.objective,
            converged: sol.converged,
            c: cfg.c,
        },
    })
}

/// Scores from a precomputed `test x support-vector` kernel matrix.
pub fn predict(model: &SvmModel, cross: &Matrix) -> Result<DecisionValues> {
    if cross.rows() > 0 && cross.cols() != model.dual_coefs.len() {
        return Err(Error::invalid(format!(
            "cross kernel has {} columns but the model has {} support vectors",
            cross.cols(),
            model.dual_coefs.len()
        )));
    }
    let scores = cross
        .iter_rows()
        .map(|row| {
            row.iter()
                .zip(&model.dual_coefs)
                .map(|(k, c)| k * c)
                .sum::<f64>()
                + model.bias
        })
        .collect();
    Ok(DecisionValues::from_scores(scores))
}

impl SvmModel {
    pub fn n_support(&self) -> usize {
        self.dual_coefs.len()
    }

    pub fn n_features(&self) -> usize {
        self.support_vectors.cols()
    }

    /// Evaluates the kernel against the support vectors and scores `rows`.
    pub fn decision_function(&self, rows: &Matrix) -> Result<DecisionValues> {
        if rows.rows() == 0 {
            return Ok(DecisionValues::default());
        }
        if rows.cols() != self.n_features() {
            return Err(Error::invalid(format!(
                "model expects {} features, got {}",
                self.n_features(),
                rows.cols()
            )));
        }
        let cross = cross_gram(&self.support_vectors, rows, &self.spec)?;
        predict(self, &cross)
    }
}
