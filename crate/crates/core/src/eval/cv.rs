use rayon::prelude::*;

use super::evaluate::evaluate_with;
use crate::data::rng::SeededRng;
use crate::data::{apply_standardization, standardize, Dataset};
use crate::error::{Error, Result};
use crate::kernels::KernelSpec;
use crate::solver::SvmConfig;

#[derive(Debug, Clone, PartialEq)]
pub struct CvResult {
    pub mean_accuracy: f64,
    pub fold_accuracies: Vec<f64>,
}

/// Fold id per row. Each class is shuffled separately and the classes are
/// dealt round-robin in one continuous sequence (negatives first), so fold
/// class counts differ by at most one and `k = N` gives leave-one-out.
///
/// Every fold must be non-empty and every training complement must contain
/// both classes.
pub fn stratified_folds(labels: &[f64], k: usize, seed: u64) -> Result<Vec<usize>> {
    if k < 2 {
        return Err(Error::config(format!("need at least 2 folds, got {k}")));
    }
    if k > labels.len() {
        return Err(Error::config(format!(
            "{k} folds requested for {} rows",
            labels.len()
        )));
    }
    let mut rng = SeededRng::new(seed);
    let mut fold = vec![0usize; labels.len()];
    let mut next = 0usize;
    for class in [-1.0, 1.0] {
        let mut idx: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == class).collect();
        rng.shuffle(&mut idx);
        for &i in &idx {
            fold[i] = next % k;
            next += 1;
        }
    }
    for f in 0..k {
        for class in [-1.0, 1.0] {
            let in_train = (0..labels.len()).any(|i| fold[i] != f && labels[i] == class);
            if !in_train {
                return Err(Error::config(format!(
                    "fold {f} leaves no class {class:+} rows for training"
                )));
            }
        }
    }
    Ok(fold)
}

/// Stratified k-fold accuracy. Standardization is refitted on each training
/// fold and applied to its validation fold.
pub fn cross_validate(
    ds: &Dataset,
    spec: &KernelSpec,
    c: f64,
    k_folds: usize,
    seed: u64,
) -> Result<CvResult> {
    let folds = stratified_folds(&ds.labels, k_folds, seed)?;
    let cfg = SvmConfig::with_c(c);
    let fold_accuracies = (0..k_folds)
        .into_par_iter()
        .map(|f| {
            let (train_idx, val_idx): (Vec<usize>, Vec<usize>) =
                (0..ds.len()).partition(|&i| folds[i] != f);
            let train_raw = ds.subset(&train_idx);
            let train = standardize(&train_raw)?;
            let stats = train.standardization.as_ref().expect("just fitted");
            let val = apply_standardization(&ds.subset(&val_idx), stats)?;
            evaluate_with(&train, &val, spec, &cfg).map(|(r, _)| r.accuracy)
        })
        .collect::<Result<Vec<f64>>>()?;
    let mean_accuracy = fold_accuracies.iter().sum::<f64>() / k_folds as f64;
    Ok(CvResult {
        mean_accuracy,
        fold_accuracies,
    })
}
