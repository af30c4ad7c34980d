//! Metrics, cross-validation, hyperparameter sweeps and the experiment pipelines.

mod bench;
mod boundary;
mod cv;
mod evaluate;
mod grid;
mod metrics;
mod timing;

pub use bench::{
    fit_and_evaluate, run_benchmark, select_hyperparameters, BenchmarkConfig, BenchmarkRow,
    BenchmarkSummary, KernelSearch,
};
pub use boundary::{export_boundary, BoundaryGrid};
pub use cv::{cross_validate, stratified_folds, CvResult};
pub use evaluate::{evaluate, evaluate_with, EvalReport};
pub use grid::{grid_search, sensitivity_heatmap, Axis, GridResult, KernelFamily};
pub use metrics::{error_rate_reduction, ConfusionMatrix};
pub use timing::{time_gram, timing_bench, TimingReport};
