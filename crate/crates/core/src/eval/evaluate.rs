use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use super::metrics::ConfusionMatrix;
use crate::data::{Dataset, SplitSpec};
use crate::error::Result;
use crate::kernels::{cross_gram, gram, KernelSpec};
use crate::solver::{predict, train, SvmConfig, SvmModel};

/// Outcome of fitting on one split and scoring the held-out part.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalReport {
    pub accuracy: f64,
    /// Keys `"-1"` and `"+1"`.
    pub f1_per_class: BTreeMap<String, f64>,
    pub confusion: ConfusionMatrix,
    pub train_seconds: f64,
    pub gram_seconds: f64,
    pub spec: KernelSpec,
    pub c: f64,
    pub split: Option<SplitSpec>,
    pub n_support: usize,
    pub iterations: u64,
    pub converged: bool,
}

impl EvalReport {
    pub fn f1_negative(&self) -> f64 {
        self.f1_per_class["-1"]
    }

    pub fn f1_positive(&self) -> f64 {
        self.f1_per_class["+1"]
    }
}

pub fn evaluate(train_ds: &Dataset, test_ds: &Dataset, spec: &KernelSpec, c: f64) -> Result<EvalReport> {
    evaluate_with(train_ds, test_ds, spec, &SvmConfig::with_c(c)).map(|(r, _)| r)
}

/// Fits on `train_ds` and scores `test_ds`; both are expected to already be
/// on the same feature scale. Returns the model alongside the report.
pub fn evaluate_with(
    train_ds: &Dataset,
    test_ds: &Dataset,
    spec: &KernelSpec,
    cfg: &SvmConfig,
) -> Result<(EvalReport, SvmModel)> {
    let t0 = Instant::now();
    let g = gram(&train_ds.features, spec)?;
    let mut gram_seconds = t0.elapsed().as_secs_f64();

    let t1 = Instant::now();
    let model = train(&g, &train_ds.labels, cfg)?;
    let train_seconds = t1.elapsed().as_secs_f64();

    let t2 = Instant::now();
    let cross = cross_gram(&model.support_vectors, &test_ds.features, spec)?;
    gram_seconds += t2.elapsed().as_secs_f64();
    let dv = predict(&model, &cross)?;

    let confusion = ConfusionMatrix::from_labels(&test_ds.labels, &dv.labels);
    let f1_per_class = BTreeMap::from([
        ("-1".to_string(), confusion.f1(-1.0)),
        ("+1".to_string(), confusion.f1(1.0)),
    ]);
    let report = EvalReport {
        accuracy: confusion.accuracy(),
        f1_per_class,
        confusion,
        train_seconds,
        gram_seconds,
        spec: *spec,
        c: cfg.c,
        split: None,
        n_support: model.n_support(),
        iterations: model.meta.iterations,
        converged: model.meta.converged,
    };
    Ok((report, model))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{make_gaussians_with_outliers, standardize, GaussianOutlierSpec};
    use crate::kernels::{AwfkParams, RbfParams};

    fn clusters() -> Dataset {
        let spec = GaussianOutlierSpec {
            n_per_class: 30,
            separation: 8.0,
            n_outliers: 0,
            ..Default::default()
        };
        standardize(&make_gaussians_with_outliers(&spec, 2)).unwrap()
    }

    #[test]
    fn perfect_on_separable_training_subset() {
        let ds = clusters();
        let test = ds.subset(&[0, 5, 31, 50]);
        let r = evaluate(&ds, &test, &KernelSpec::Awfk(AwfkParams::default()), 10.0).unwrap();
        assert_eq!(r.accuracy, 1.0);
        assert_eq!(r.f1_negative(), 1.0);
        assert_eq!(r.f1_positive(), 1.0);
        assert_eq!(r.confusion.total(), 4);
    }

    #[test]
    fn deterministic_confusion() {
        let ds = clusters();
        let spec = KernelSpec::Rbf(RbfParams::new(0.5).unwrap());
        let a = evaluate(&ds, &ds, &spec, 1.0).unwrap();
        let b = evaluate(&ds, &ds, &spec, 1.0).unwrap();
        assert_eq!(a.confusion, b.confusion);
        assert_eq!(a.accuracy, a.confusion.accuracy());
    }
}
