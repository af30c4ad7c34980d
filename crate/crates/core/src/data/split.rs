use serde::Serialize;

use super::rng::SeededRng;
use super::Dataset;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SplitSpec {
    pub test_fraction: f64,
    pub seed: u64,
    pub stratified: bool,
}

impl SplitSpec {
    pub fn stratified(test_fraction: f64, seed: u64) -> Self {
        SplitSpec {
            test_fraction,
            seed,
            stratified: true,
        }
    }
}

/// Per-class test quotas: the total is `round(N * f)` and is distributed by
/// largest remainder, ties going to the negative class first.
fn stratified_quotas(counts: [usize; 2], fraction: f64) -> [usize; 2] {
    let n: usize = counts.iter().sum();
    let total = (n as f64 * fraction).round() as usize;
    let exact = counts.map(|c| c as f64 * fraction);
    let mut quota = exact.map(|q| q.floor() as usize);
    let mut remaining = total.saturating_sub(quota[0] + quota[1]);
    let mut order = [0usize, 1];
    order.sort_by(|&a, &b| {
        let ra = exact[a] - exact[a].floor();
        let rb = exact[b] - exact[b].floor();
        rb.partial_cmp(&ra).unwrap().then(a.cmp(&b))
    });
    for &c in order.iter().cycle() {
        if remaining == 0 {
            break;
        }
        if quota[c] < counts[c] {
            quota[c] += 1;
            remaining -= 1;
        } else if quota.iter().zip(&counts).all(|(q, c)| q >= c) {
            break;
        }
    }
    quota
}

/// `(train, test)` row indices, each sorted ascending.
pub fn split_indices(labels: &[f64], spec: &SplitSpec) -> Result<(Vec<usize>, Vec<usize>)> {
    if !(spec.test_fraction > 0.0 && spec.test_fraction < 1.0) {
        return Err(Error::config(format!(
            "test fraction must lie in (0, 1), got {}",
            spec.test_fraction
        )));
    }
    let n = labels.len();
    let mut rng = SeededRng::new(spec.seed);
    let mut test = Vec::new();
    if spec.stratified {
        let mut by_class: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
        for (i, &y) in labels.iter().enumerate() {
            by_class[usize::from(y > 0.0)].push(i);
        }
        let quotas = stratified_quotas([by_class[0].len(), by_class[1].len()], spec.test_fraction);
        for (c, idx) in by_class.iter_mut().enumerate() {
            let q = quotas[c];
            if q == 0 || q >= idx.len() {
                return Err(Error::config(format!(
                    "stratified split with fraction {} leaves class {} ({} rows) without a train or test sample",
                    spec.test_fraction,
                    if c == 0 { "-1" } else { "+1" },
                    idx.len()
                )));
            }
            rng.shuffle(idx);
            test.extend_from_slice(&idx[..q]);
        }
    } else {
        let total = (n as f64 * spec.test_fraction).round() as usize;
        if total == 0 || total >= n {
            return Err(Error::config(format!(
                "test fraction {} on {n} rows leaves an empty side",
                spec.test_fraction
            )));
        }
        let mut idx: Vec<usize> = (0..n).collect();
        rng.shuffle(&mut idx);
        test.extend_from_slice(&idx[..total]);
    }
    test.sort_unstable();
    let mut in_test = vec![false; n];
    for &i in &test {
        in_test[i] = true;
    }
    let train = (0..n).filter(|&i| !in_test[i]).collect();
    Ok((train, test))
}

pub fn split(ds: &Dataset, spec: &SplitSpec) -> Result<(Dataset, Dataset)> {
    let (train, test) = split_indices(&ds.labels, spec)?;
    Ok((ds.subset(&train), ds.subset(&test)))
}
