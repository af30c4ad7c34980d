use std::time::Instant;

use serde::Serialize;

use crate::data::make_random_dense;
use crate::error::Result;
use crate::kernels::{gram, KernelSpec};
use crate::matrix::Matrix;
use crate::solver::{train, SvmConfig};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TimingReport {
    pub n: usize,
    pub d: usize,
    pub gram_seconds: f64,
    pub train_seconds: f64,
    pub iterations: u64,
    pub n_support: usize,
    pub converged: bool,
}

/// Fastest of `repeats` Gram constructions, in seconds.
pub fn time_gram(data: &Matrix, spec: &KernelSpec, repeats: usize) -> Result<f64> {
    let mut best = f64::INFINITY;
    for _ in 0..repeats.max(1) {
        let t = Instant::now();
        let g = gram(data, spec)?;
        let elapsed = t.elapsed().as_secs_f64();
        std::hint::black_box(&g);
        best = best.min(elapsed);
    }
    Ok(best)
}

/// Times Gram construction and SMO training separately on uniform random data.
/// A single-row problem has only one class, so training is skipped for `n = 1`.
pub fn timing_bench(n: usize, d: usize, spec: &KernelSpec, seed: u64, cfg: &SvmConfig) -> Result<TimingReport> {
    let ds = make_random_dense(n, d, seed);
    let t = Instant::now();
    let g = gram(&ds.features, spec)?;
    let gram_seconds = t.elapsed().as_secs_f64();
    if n < 2 {
        return Ok(TimingReport {
            n,
            d,
            gram_seconds,
            train_seconds: 0.0,
            iterations: 0,
            n_support: 0,
            converged: true,
        });
    }
    let t = Instant::now();
    let model = train(&g, &ds.labels, cfg)?;
    let train_seconds = t.elapsed().as_secs_f64();
    Ok(TimingReport {
        n,
        d,
        gram_seconds,
        train_seconds,
        iterations: model.meta.iterations,
        n_support: model.n_support(),
        converged: model.meta.converged,
    })
}
