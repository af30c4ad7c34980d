//! Two-variable SMO with maximal-violating-pair working-set selection.
//!
//! The solver minimizes `f(a) = 1/2 a'Qa - e'a` with `Q_ij = y_i y_j K_ij`,
//! keeping the gradient `G = Qa - e` cached. With
//!
//! ```text
//! I_up  = { t : y_t = +1, a_t < C } u { t : y_t = -1, a_t > 0 }
//! I_low = { t : y_t = +1, a_t > 0 } u { t : y_t = -1, a_t < C }
//! m = max_{I_up} -y_t G_t,   M = min_{I_low} -y_t G_t
//! ```
//!
//! each iteration optimizes the pair attaining `m` and `M` analytically, and
//! the loop stops once `m - M < kkt_tol`.

use super::SvmConfig;
use crate::matrix::Matrix;

/// Floor for the curvature of a pair step when the 2x2 subproblem is flat.
const TAU: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct DualSolution {
    pub alphas: Vec<f64>,
    pub bias: f64,
    pub iterations: u64,
    /// Dual objective `sum a - 1/2 a'Qa` at the returned point.
    pub objective: f64,
    pub converged: bool,
}

struct Smo<'a> {
    k: &'a Matrix,
    y: &'a [f64],
    c: f64,
    alpha: Vec<f64>,
    grad: Vec<f64>,
    active: Vec<usize>,
}

impl<'a> Smo<'a> {
    #[inline]
    fn q(&self, i: usize, j: usize) -> f64 {
        self.y[i] * self.y[j] * self.k.get(i, j)
    }

    #[inline]
    fn at_upper(&self, t: usize) -> bool {
        self.alpha[t] >= self.c
    }

    #[inline]
    fn at_lower(&self, t: usize) -> bool {
        self.alpha[t] <= 0.0
    }

    #[inline]
    fn in_up(&self, t: usize) -> bool {
        if self.y[t] > 0.0 {
            !self.at_upper(t)
        } else {
            !self.at_lower(t)
        }
    }

    #[inline]
    fn in_low(&self, t: usize) -> bool {
        if self.y[t] > 0.0 {
            !self.at_lower(t)
        } else {
            !self.at_upper(t)
        }
    }

    /// Returns `(i, m, j, M)` over the active set; indices are `None` when a
    /// set is empty.
    fn select(&self) -> (Option<usize>, f64, Option<usize>, f64) {
        let (mut i, mut m) = (None, f64::NEG_INFINITY);
        let (mut j, mut big_m) = (None, f64::INFINITY);
        for &t in &self.active {
            let v = -self.y[t] * self.grad[t];
            if self.in_up(t) && v > m {
                m = v;
                i = Some(t);
            }
            if self.in_low(t) && v < big_m {
                big_m = v;
                j = Some(t);
            }
        }
        (i, m, j, big_m)
    }

    fn step(&mut self, i: usize, j: usize) {
        let c = self.c;
        let (old_i, old_j) = (self.alpha[i], self.alpha[j]);
        let qii = self.k.get(i, i);
        let qjj = self.k.get(j, j);
        let qij = self.q(i, j);
        let (mut ai, mut aj) = (old_i, old_j);

        if self.y[i] != self.y[j] {
            let mut quad = qii + qjj + 2.0 * qij;
            if quad <= 0.0 {
                quad = TAU;
            }
            let delta = (-self.grad[i] - self.grad[j]) / quad;
            let diff = ai - aj;
            ai += delta;
            aj += delta;
            if diff > 0.0 {
                if aj < 0.0 {
                    aj = 0.0;
                    ai = diff;
                }
            } else if ai < 0.0 {
                ai = 0.0;
                aj = -diff;
            }
            if diff > 0.0 {
                if ai > c {
                    ai = c;
                    aj = c - diff;
                }
            } else if aj > c {
                aj = c;
                ai = c + diff;
            }
        } else {
            let mut quad = qii + qjj - 2.0 * qij;
            if quad <= 0.0 {
                quad = TAU;
            }
            let delta = (self.grad[i] - self.grad[j]) / quad;
            let sum = ai + aj;
            ai -= delta;
            aj += delta;
            if sum > c {
                if ai > c {
                    ai = c;
                    aj = sum - c;
                }
            } else if aj < 0.0 {
                aj = 0.0;
                ai = sum;
            }
            if sum > c {
                if aj > c {
                    aj = c;
                    ai = sum - c;
                }
            } else if ai < 0.0 {
                ai = 0.0;
                aj = sum;
            }
        }

        let (di, dj) = (ai - old_i, aj - old_j);

        #[cfg(debug_assertions)]
        {
            // Change of the minimized objective; must not increase.
            let df = self.grad[i] * di
                + self.grad[j] * dj
                + 0.5 * (qii * di * di + qjj * dj * dj + 2.0 * qij * di * dj);
            let scale = 1.0 + self.grad[i].abs().max(self.grad[j].abs()) * c;
            debug_assert!(df <= 1e-9 * scale, "SMO step increased the objective by {df}");
        }

        self.alpha[i] = ai;
        self.alpha[j] = aj;
        if di != 0.0 || dj != 0.0 {
            let (yi, yj) = (self.y[i], self.y[j]);
            let (ki, kj) = (self.k.row(i), self.k.row(j));
            for &t in &self.active {
                let yt = self.y[t];
                self.grad[t] += yt * (yi * ki[t] * di + yj * kj[t] * dj);
            }
        }
    }

    fn reconstruct_gradient(&mut self) {
        let n = self.y.len();
        let mut in_active = vec![false; n];
        for &t in &self.active {
            in_active[t] = true;
        }
        let support: Vec<usize> = (0..n).filter(|&s| self.alpha[s] != 0.0).collect();
        for t in (0..n).filter(|&t| !in_active[t]) {
            let row = self.k.row(t);
            let g: f64 = support
                .iter()
                .map(|&s| self.y[s] * row[s] * self.alpha[s])
                .sum();
            self.grad[t] = self.y[t] * g - 1.0;
        }
        self.active = (0..n).collect();
    }

    fn shrink(&mut self, gmax_up: f64, gmax_low: f64) {
        let keep: Vec<usize> = self
            .active
            .iter()
            .copied()
            .filter(|&t| {
                let g = self.grad[t];
                let removable = if self.at_upper(t) {
                    if self.y[t] > 0.0 {
                        -g > gmax_up
                    } else {
                        -g > gmax_low
                    }
                } else if self.at_lower(t) {
                    if self.y[t] > 0.0 {
                        g > gmax_low
                    } else {
                        g > gmax_up
                    }
                } else {
                    false
                };
                !removable
            })
            .collect();
        self.active = keep;
    }

    fn bias(&self) -> f64 {
        let mut upper = f64::INFINITY;
        let mut lower = f64::NEG_INFINITY;
        let mut free_sum = 0.0;
        let mut n_free = 0usize;
        for t in 0..self.y.len() {
            let yg = self.y[t] * self.grad[t];
            if self.at_upper(t) {
                if self.y[t] < 0.0 {
                    upper = upper.min(yg);
                } else {
                    lower = lower.max(yg);
                }
            } else if self.at_lower(t) {
                if self.y[t] > 0.0 {
                    upper = upper.min(yg);
                } else {
                    lower = lower.max(yg);
                }
            } else {
                n_free += 1;
                free_sum += yg;
            }
        }
        let rho = if n_free > 0 {
            free_sum / n_free as f64
        } else if upper.is_finite() && lower.is_finite() {
            0.5 * (upper + lower)
        } else if upper.is_finite() {
            upper
        } else if lower.is_finite() {
            lower
        } else {
            0.0
        };
        -rho
    }
}

/// Solves the dual over a square kernel matrix `k` and ±1 `labels`.
///
/// Callers are expected to have validated shapes and labels; [`super::train`]
/// does so. Reaching `max_iter` returns the current iterate with
/// `converged = false`.
pub fn solve(k: &Matrix, labels: &[f64], cfg: &SvmConfig) -> DualSolution {
    let n = labels.len();
    assert_eq!(k.rows(), n, "kernel rows must match label count");
    assert_eq!(k.cols(), n, "kernel must be square");

    let mut smo = Smo {
        k,
        y: labels,
        c: cfg.c,
        alpha: vec![0.0; n],
        grad: vec![-1.0; n],
        active: (0..n).collect(),
    };

    let shrink_every = n.clamp(1, 1000) as u64;
    let mut countdown = shrink_every;
    let mut unshrunk = false;
    let mut iterations = 0u64;
    let mut converged = false;

    while iterations < cfg.max_iter {
        if cfg.shrink {
            countdown -= 1;
            if countdown == 0 {
                countdown = shrink_every;
                let (_, m, _, big_m) = smo.select();
                if !unshrunk && m - big_m <= 10.0 * cfg.kkt_tol {
                    unshrunk = true;
                    smo.reconstruct_gradient();
                }
                let gmax_low = -big_m;
                if m.is_finite() && gmax_low.is_finite() {
                    smo.shrink(m, gmax_low);
                }
            }
        }

        let (i, m, j, big_m) = smo.select();
        let done = match (i, j) {
            (Some(_), Some(_)) => m - big_m < cfg.kkt_tol,
            _ => true,
        };
        if done {
            if smo.active.len() < n {
                smo.reconstruct_gradient();
                countdown = shrink_every;
                continue;
            }
            converged = true;
            break;
        }
        smo.step(i.unwrap(), j.unwrap());
        iterations += 1;
    }

    if smo.active.len() < n {
        smo.reconstruct_gradient();
    }
    // sum a - 1/2 a'Qa = -1/2 sum a_i (G_i - 1)
    let objective = -0.5
        * smo
            .alpha
            .iter()
            .zip(&smo.grad)
            .map(|(a, g)| a * (g - 1.0))
            .sum::<f64>();
    let bias = smo.bias();
    DualSolution {
        alphas: smo.alpha,
        bias,
        iterations,
        objective,
        converged,
    }
}

/// `sum_i a_i - 1/2 sum_ij a_i a_j y_i y_j K_ij`.
pub fn dual_objective(k: &Matrix, labels: &[f64], alphas: &[f64]) -> f64 {
    let n = alphas.len();
    let mut quad = 0.0;
    for i in 0..n {
        if alphas[i] == 0.0 {
            continue;
        }
        let row = k.row(i);
        let mut acc = 0.0;
        for j in 0..n {
            acc += alphas[j] * labels[j] * row[j];
        }
        quad += alphas[i] * labels[i] * acc;
    }
    alphas.iter().sum::<f64>() - 0.5 * quad
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn objective_closed_forms() {
        let k = Matrix::from_rows(&[[1.0]]).unwrap();
        assert_eq!(dual_objective(&k, &[1.0], &[0.0]), 0.0);
        let a = 0.7;
        assert!((dual_objective(&k, &[1.0], &[a]) - (a - a * a / 2.0)).abs() < 1e-15);
    }

    #[test]
    fn objective_matches_naive_double_loop() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 5;
        let pts: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let mut k = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                k.set(i, j, (-(pts[i] - pts[j]).powi(2)).exp());
            }
        }
        let y = [1.0, -1.0, 1.0, -1.0, 1.0];
        let alphas: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..2.0)).collect();
        let mut naive = 0.0;
        for i in 0..n {
            naive += alphas[i];
            for j in 0..n {
                naive -= 0.5 * alphas[i] * alphas[j] * y[i] * y[j] * k.get(i, j);
            }
        }
        let got = dual_objective(&k, &y, &alphas);
        assert!((got - naive).abs() <= 1e-12 * naive.abs().max(1.0));
    }

    #[test]
    fn symmetric_pair_has_equal_alphas_and_zero_bias() {
        // linear kernel on x = -1, +1
        let k = Matrix::from_rows(&[[1.0, -1.0], [-1.0, 1.0]]).unwrap();
        let y = [-1.0, 1.0];
        let sol = solve(&k, &y, &SvmConfig::with_c(1e6));
        assert!(sol.converged);
        assert!(sol.alphas[0] > 0.0);
        assert!((sol.alphas[0] - sol.alphas[1]).abs() < 1e-12);
        assert!((sol.alphas[0] - 0.5).abs() < 1e-9);
        assert!(sol.bias.abs() < 1e-12);
    }

    #[test]
    fn duplicated_point_with_opposite_labels_pins_both_at_c() {
        let k = Matrix::from_rows(&[[1.0, 1.0], [1.0, 1.0]]).unwrap();
        let y = [1.0, -1.0];
        let sol = solve(&k, &y, &SvmConfig::with_c(1.0));
        assert!(sol.converged);
        assert_eq!(sol.alphas, vec![1.0, 1.0]);
        assert!(sol.iterations < 10);
    }

    #[test]
    fn iteration_cap_reports_non_convergence() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let n = 40;
        let pts: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let y: Vec<f64> = (0..n).map(|i| if i % 2 == 0 { 1.0 } else { -1.0 }).collect();
        let mut k = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                k.set(i, j, (-10.0 * (pts[i] - pts[j]).powi(2)).exp());
            }
        }
        let cfg = SvmConfig {
            max_iter: 2,
            ..SvmConfig::with_c(100.0)
        };
        let sol = solve(&k, &y, &cfg);
        assert!(!sol.converged);
        assert_eq!(sol.iterations, 2);
    }

    #[test]
    fn shrinking_does_not_change_the_optimum() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let n = 300;
        let pts: Vec<[f64; 2]> = (0..n)
            .map(|_| [rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)])
            .collect();
        let y: Vec<f64> = pts
            .iter()
            .map(|p| if p[0] * p[1] + 0.3 * rng.random_range(-1.0..1.0) > 0.0 { 1.0 } else { -1.0 })
            .collect();
        let mut k = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let d = (pts[i][0] - pts[j][0]).powi(2) + (pts[i][1] - pts[j][1]).powi(2);
                k.set(i, j, (-d).exp());
            }
        }
        let tight = |shrink| SvmConfig {
            kkt_tol: 1e-6,
            shrink,
            ..SvmConfig::with_c(5.0)
        };
        let a = solve(&k, &y, &tight(true));
        let b = solve(&k, &y, &tight(false));
        assert!(a.converged && b.converged);
        assert!((a.objective - b.objective).abs() <= 1e-6 * a.objective.abs());
        assert!((a.objective - dual_objective(&k, &y, &a.alphas)).abs() <= 1e-9 * a.objective.abs());
    }
}
