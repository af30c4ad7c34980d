//! Repeated-split kernel comparison: for every seed, split, tune each kernel by
//! cross-validation on the training part, refit, and score the held-out part.

use rayon::prelude::*;

use super::evaluate::{evaluate_with, EvalReport};
use super::grid::{grid_search, Axis, GridResult, KernelFamily};
use super::metrics::error_rate_reduction;
use crate::data::{apply_standardization, split, standardize, Dataset, SplitSpec};
use crate::error::Result;
use crate::kernels::KernelSpec;
use crate::solver::SvmConfig;

/// Hyperparameter search space for one kernel.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelSearch {
    pub family: KernelFamily,
    pub axes: Vec<Axis>,
    pub c_values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkConfig {
    pub test_fraction: f64,
    pub seeds: Vec<u64>,
    pub k_folds: usize,
    pub awfk: KernelSearch,
    pub rbf: KernelSearch,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkRow {
    pub seed: u64,
    pub awfk: EvalReport,
    pub rbf: EvalReport,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkSummary {
    pub rows: Vec<BenchmarkRow>,
    pub mean_awfk: f64,
    pub mean_rbf: f64,
    /// Seeds on which AWFK accuracy >= RBF accuracy.
    pub awfk_at_least_rbf: usize,
    /// From the mean accuracies; `None` if RBF was perfect.
    pub error_rate_reduction: Option<f64>,
}

/// Grid search on `train_raw` (raw features; CV standardizes per fold).
/// Returns the best kernel, its C and the full grid.
pub fn select_hyperparameters(
    train_raw: &Dataset,
    search: &KernelSearch,
    k_folds: usize,
    seed: u64,
) -> Result<(KernelSpec, f64, GridResult)> {
    let grid = grid_search(train_raw, &search.family, &search.axes, &search.c_values, k_folds, seed)?;
    let params = grid.best_params();
    let (kernel_params, c) = params.split_at(params.len() - 1);
    let assignment: Vec<(&str, f64)> = kernel_params.iter().map(|(n, v)| (n.as_str(), *v)).collect();
    let spec = search.family.instantiate(&assignment)?;
    Ok((spec, c[0].1, grid))
}

/// Standardizes with training statistics, fits and scores.
pub fn fit_and_evaluate(
    train_raw: &Dataset,
    test_raw: &Dataset,
    spec: &KernelSpec,
    c: f64,
) -> Result<EvalReport> {
    let train = standardize(train_raw)?;
    let stats = train.standardization.as_ref().expect("just fitted");
    let test = apply_standardization(test_raw, stats)?;
    evaluate_with(&train, &test, spec, &SvmConfig::with_c(c)).map(|(r, _)| r)
}

fn run_seed(ds: &Dataset, cfg: &BenchmarkConfig, seed: u64) -> Result<BenchmarkRow> {
    let split_spec = SplitSpec::stratified(cfg.test_fraction, seed);
    let (train_raw, test_raw) = split(ds, &split_spec)?;
    let mut reports = Vec::with_capacity(2);
    for search in [&cfg.awfk, &cfg.rbf] {
        let (spec, c, _) = select_hyperparameters(&train_raw, search, cfg.k_folds, seed)?;
        let mut report = fit_and_evaluate(&train_raw, &test_raw, &spec, c)?;
        report.split = Some(split_spec);
        reports.push(report);
    }
    let rbf = reports.pop().expect("two reports");
    let awfk = reports.pop().expect("two reports");
    Ok(BenchmarkRow { seed, awfk, rbf })
}

pub fn run_benchmark(ds: &Dataset, cfg: &BenchmarkConfig) -> Result<BenchmarkSummary> {
    let rows = cfg
        .seeds
        .par_iter()
        .map(|&seed| run_seed(ds, cfg, seed))
        .collect::<Result<Vec<_>>>()?;
    let n = rows.len().max(1) as f64;
    let mean_awfk = rows.iter().map(|r| r.awfk.accuracy).sum::<f64>() / n;
    let mean_rbf = rows.iter().map(|r| r.rbf.accuracy).sum::<f64>() / n;
    let awfk_at_least_rbf = rows
        .iter()
        .filter(|r| r.awfk.accuracy >= r.rbf.accuracy)
        .count();
    Ok(BenchmarkSummary {
        error_rate_reduction: error_rate_reduction(mean_awfk, mean_rbf),
        rows,
        mean_awfk,
        mean_rbf,
        awfk_at_least_rbf,
    })
}
