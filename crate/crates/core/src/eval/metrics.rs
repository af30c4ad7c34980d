use serde::Serialize;

/// Binary confusion counts; rows are the true class, columns the prediction,
/// both ordered `[-1, +1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct ConfusionMatrix(pub [[u64; 2]; 2]);

#[inline]
fn class_index(label: f64) -> usize {
    usize::from(label > 0.0)
}

impl ConfusionMatrix {
    pub fn from_labels(truth: &[f64], predicted: &[f64]) -> Self {
        assert_eq!(truth.len(), predicted.len(), "label vectors differ in length");
        let mut m = [[0u64; 2]; 2];
        for (&t, &p) in truth.iter().zip(predicted) {
            m[class_index(t)][class_index(p)] += 1;
        }
        ConfusionMatrix(m)
    }

    pub fn total(&self) -> u64 {
        self.0.iter().flatten().sum()
    }

    pub fn correct(&self) -> u64 {
        self.0[0][0] + self.0[1][1]
    }

    /// Trace over total; 0 for an empty matrix.
    pub fn accuracy(&self) -> f64 {
        let n = self.total();
        if n == 0 {
            0.0
        } else {
            self.correct() as f64 / n as f64
        }
    }

    /// F1 of one class (`-1.0` or `+1.0`). Zero denominators count as 0.
    pub fn f1(&self, label: f64) -> f64 {
        let c = class_index(label);
        let tp = self.0[c][c] as f64;
        let predicted = (self.0[0][c] + self.0[1][c]) as f64;
        let actual = (self.0[c][0] + self.0[c][1]) as f64;
        let precision = if predicted > 0.0 { tp / predicted } else { 0.0 };
        let recall = if actual > 0.0 { tp / actual } else { 0.0 };
        if precision + recall > 0.0 {
            2.0 * precision * recall / (precision + recall)
        } else {
            0.0
        }
    }
}

/// `1 - (1 - acc_new) / (1 - acc_base)`; `None` when the baseline is perfect.
pub fn error_rate_reduction(acc_new: f64, acc_base: f64) -> Option<f64> {
    let base_err = 1.0 - acc_base;
    (base_err > 0.0).then(|| 1.0 - (1.0 - acc_new) / base_err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_predictions() {
        let y = [1.0, -1.0, 1.0, -1.0];
        let m = ConfusionMatrix::from_labels(&y, &y);
        assert_eq!(m.accuracy(), 1.0);
        assert_eq!(m.f1(1.0), 1.0);
        assert_eq!(m.f1(-1.0), 1.0);
    }

    #[test]
    fn constant_prediction_on_balanced_set() {
        let y = [1.0, -1.0, 1.0, -1.0];
        let m = ConfusionMatrix::from_labels(&y, &[1.0; 4]);
        assert_eq!(m.accuracy(), 0.5);
        assert_eq!(m.f1(-1.0), 0.0);
        assert!((m.f1(1.0) - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(m.0, [[0, 2], [0, 2]]);
    }

    #[test]
    fn table_values_give_about_half() {
        let r = error_rate_reduction(0.9811, 0.9623).unwrap();
        assert!((r - 0.49867).abs() < 1e-4, "{r}");
        assert!(error_rate_reduction(0.9, 1.0).is_none());
    }
}
