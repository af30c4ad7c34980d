//! Synthetic datasets. Each generator is a pure function of its arguments.

use super::rng::SeededRng;
use super::Dataset;
use crate::matrix::Matrix;

/// Two isotropic Gaussian clusters plus far-away adversarially labelled points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianOutlierSpec {
    pub n_per_class: usize,
    pub dim: usize,
    /// Distance between the cluster centers, placed at `-sep/2` (label -1)
    /// and `+sep/2` (label +1) on the first axis.
    pub separation: f64,
    pub cluster_std: f64,
    pub n_outliers: usize,
    pub outlier_radius: f64,
}

impl Default for GaussianOutlierSpec {
    fn default() -> Self {
        GaussianOutlierSpec {
            n_per_class: 100,
            dim: 2,
            separation: 4.0,
            cluster_std: 1.0,
            n_outliers: 5,
            outlier_radius: 15.0,
        }
    }
}

/// Rows are ordered: negatives, positives, outliers. Inliers are drawn before
/// outliers, so two calls differing only in `n_outliers` share their inliers.
///
/// Outliers sit at `outlier_radius` from the origin in uniformly random
/// directions and take the label opposite to the nearer cluster center.
pub fn make_gaussians_with_outliers(spec: &GaussianOutlierSpec, seed: u64) -> Dataset {
    let mut rng = SeededRng::new(seed);
    let d = spec.dim.max(1);
    let n = 2 * spec.n_per_class + spec.n_outliers;
    let mut rows = Vec::with_capacity(n * d);
    let mut labels = Vec::with_capacity(n);
    for (label, center) in [(-1.0, -spec.separation / 2.0), (1.0, spec.separation / 2.0)] {
        for _ in 0..spec.n_per_class {
            for k in 0..d {
                let c = if k == 0 { center } else { 0.0 };
                rows.push(c + spec.cluster_std * rng.normal());
            }
            labels.push(label);
        }
    }
    for _ in 0..spec.n_outliers {
        let dir = loop {
            let v: Vec<f64> = (0..d).map(|_| rng.normal()).collect();
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > 1e-12 {
                break v.into_iter().map(|x| x / norm).collect::<Vec<_>>();
            }
        };
        let nearer_positive = dir[0] >= 0.0;
        rows.extend(dir.iter().map(|x| x * spec.outlier_radius));
        labels.push(if nearer_positive { -1.0 } else { 1.0 });
    }
    let features = Matrix::from_vec(n, d, rows).expect("sized above");
    Dataset::new(features, labels).expect("labels are +-1")
}

/// Interleaved half circles: the upper moon `(cos t, sin t)` is labelled -1,
/// the lower moon `(1 - cos t, 0.5 - sin t)` is labelled +1, for `t` evenly
/// spaced on `[0, pi]`. Gaussian noise with standard deviation `noise_sigma` is
/// added to every coordinate. For odd `n` the lower moon gets the extra point.
pub fn make_two_moons(n: usize, noise_sigma: f64, seed: u64) -> Dataset {
    let mut rng = SeededRng::new(seed);
    let n_upper = n / 2;
    let n_lower = n - n_upper;
    let angles = |m: usize| -> Vec<f64> {
        if m <= 1 {
            vec![0.0; m]
        } else {
            (0..m)
                .map(|k| std::f64::consts::PI * k as f64 / (m - 1) as f64)
                .collect()
        }
    };
    let mut rows = Vec::with_capacity(2 * n);
    let mut labels = Vec::with_capacity(n);
    for t in angles(n_upper) {
        rows.push(t.cos());
        rows.push(t.sin());
        labels.push(-1.0);
    }
    for t in angles(n_lower) {
        rows.push(1.0 - t.cos());
        rows.push(0.5 - t.sin());
        labels.push(1.0);
    }
    for v in &mut rows {
        *v += noise_sigma * rng.normal();
    }
    let features = Matrix::from_vec(n, 2, rows).expect("sized above");
    Dataset::new(features, labels).expect("labels are +-1")
}

/// Uniform features on `[-1, 1]` with a shuffled, balanced label vector
/// (`n / 2` negatives).
pub fn make_random_dense(n: usize, d: usize, seed: u64) -> Dataset {
    let mut rng = SeededRng::new(seed);
    let data: Vec<f64> = (0..n * d).map(|_| rng.uniform_in(-1.0, 1.0)).collect();
    let mut labels: Vec<f64> = (0..n).map(|i| if i < n / 2 { -1.0 } else { 1.0 }).collect();
    rng.shuffle(&mut labels);
    Dataset::new(Matrix::from_vec(n, d, data).expect("sized above"), labels)
        .expect("labels are +-1")
}
