//! Support vector machines: primal sub-gradient descent (Pegasos) for
//! the linear kernel and a simplified SMO solver for the RBF kernel.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::FeatureMatrix;

use super::{binary_classes, Prediction};

/// Linear decision function `sign(w·x + b)`; confidence is the
/// unsigned decision value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearSvmModel {
    pub classes: [String; 2],
    pub weights: Vec<f64>,
    pub bias: f64,
    pub columns: Vec<String>,
}

/// Map labels onto {-1, +1} with classes[0] ↦ -1.
fn signed_labels(labels: &[String], classes: &[String; 2]) -> Vec<f64> {
    labels
        .iter()
        .map(|l| if *l == classes[1] { 1.0 } else { -1.0 })
        .collect()
}

/// Pegasos-style hinge-loss training with λ = 1/(nC) and seeded
/// per-epoch shuffling. The bias is trained as an augmented constant
/// feature, so it shares the regularizer.
pub(super) fn train_svm_linear(
    features: &FeatureMatrix,
    labels: &[String],
    c: f64,
    epochs: usize,
    seed: u64,
) -> Result<LinearSvmModel> {
    if c <= 0.0 {
        return Err(Error::Training(format!("C = {c} must be positive")));
    }
    let classes = binary_classes(labels)?;
    let y = signed_labels(labels, &classes);
    let n = features.n_rows();
    let d = features.n_cols();
    let lambda = 1.0 / (n as f64 * c);

    // index d holds the augmented bias coordinate
    let mut w = vec![0.0; d + 1];
    let mut order: Vec<usize> = (0..n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = 0u64;

    for _ in 0..epochs {
        order.shuffle(&mut rng);
        for &i in &order {
            t += 1;
            let eta = 1.0 / (lambda * t as f64);
            let row = &features.rows[i];
            let margin = y[i] * (dot(&w[..d], row) + w[d]);
            let decay = 1.0 - eta * lambda;
            for wj in w.iter_mut() {
                *wj *= decay;
            }
            if margin < 1.0 {
                let step = eta * y[i];
                for (wj, xj) in w.iter_mut().zip(row) {
                    *wj += step * xj;
                }
                w[d] += step;
            }
        }
    }

    let bias = w[d];
    w.truncate(d);
    Ok(LinearSvmModel {
        classes,
        weights: w,
        bias,
        columns: features.columns.clone(),
    })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl LinearSvmModel {
    pub fn decision_value(&self, x: &[f64]) -> f64 {
        dot(&self.weights, x) + self.bias
    }

    pub fn predict(&self, x: &[f64]) -> Prediction {
        let value = self.decision_value(x);
        let winner = usize::from(value >= 0.0);
        Prediction {
            label: self.classes[winner].clone(),
            confidence: value.abs(),
        }
    }
}

/// RBF-kernel SVM in the dual: support coefficients `α_i y_i`, their
/// vectors, a bias, and the kernel width.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RbfSvmModel {
    pub classes: [String; 2],
    pub support_vectors: Vec<Vec<f64>>,
    pub support_coefs: Vec<f64>,
    pub bias: f64,
    pub gamma: f64,
    pub converged: bool,
    pub columns: Vec<String>,
}

pub fn rbf_kernel(a: &[f64], b: &[f64], gamma: f64) -> f64 {
    let sq: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
    (-gamma * sq).exp()
}

// sweeps allowed before giving up and returning converged = false
const SMO_SWEEP_CAP: usize = 500;

/// Simplified SMO over the dual problem.
pub(super) fn train_svm_rbf(
    features: &FeatureMatrix,
    labels: &[String],
    c: f64,
    gamma: f64,
    max_passes: usize,
    tol: f64,
    seed: u64,
) -> Result<RbfSvmModel> {
    if c <= 0.0 || gamma <= 0.0 {
        return Err(Error::Training(format!(
            "C = {c} and gamma = {gamma} must be positive"
        )));
    }
    let classes = binary_classes(labels)?;
    let y = signed_labels(labels, &classes);
    let n = features.n_rows();
    let rows = &features.rows;

    let kernel: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| rbf_kernel(&rows[i], &rows[j], gamma)).collect())
        .collect();

    let mut alpha = vec![0.0f64; n];
    let mut b = 0.0f64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let decision = |alpha: &[f64], b: f64, i: usize| -> f64 {
        let mut acc = b;
        for j in 0..n {
            if alpha[j] != 0.0 {
                acc += alpha[j] * y[j] * kernel[i][j];
            }
        }
        acc
    };

    let mut stable_passes = 0usize;
    let mut sweeps = 0usize;
    while stable_passes < max_passes && sweeps < SMO_SWEEP_CAP {
        sweeps += 1;
        let mut changed = 0usize;
        for i in 0..n {
            let e_i = decision(&alpha, b, i) - y[i];
            if !((y[i] * e_i < -tol && alpha[i] < c) || (y[i] * e_i > tol && alpha[i] > 0.0)) {
                continue;
            }
            let j = {
                let pick = rng.gen_range(0..n - 1);
                if pick >= i {
                    pick + 1
                } else {
                    pick
                }
            };
            let e_j = decision(&alpha, b, j) - y[j];
            let (alpha_i_old, alpha_j_old) = (alpha[i], alpha[j]);
            let (low, high) = if y[i] != y[j] {
                (
                    (alpha[j] - alpha[i]).max(0.0),
                    (c + alpha[j] - alpha[i]).min(c),
                )
            } else {
                (
                    (alpha[i] + alpha[j] - c).max(0.0),
                    (alpha[i] + alpha[j]).min(c),
                )
            };
            if low >= high {
                continue;
            }
            let eta = 2.0 * kernel[i][j] - kernel[i][i] - kernel[j][j];
            if eta >= 0.0 {
                continue;
            }
            let mut alpha_j = alpha_j_old - y[j] * (e_i - e_j) / eta;
            alpha_j = alpha_j.clamp(low, high);
            if (alpha_j - alpha_j_old).abs() < 1e-5 {
                continue;
            }
            let alpha_i = alpha_i_old + y[i] * y[j] * (alpha_j_old - alpha_j);
            alpha[i] = alpha_i;
            alpha[j] = alpha_j;

            let b1 = b - e_i
                - y[i] * (alpha_i - alpha_i_old) * kernel[i][i]
                - y[j] * (alpha_j - alpha_j_old) * kernel[i][j];
            let b2 = b - e_j
                - y[i] * (alpha_i - alpha_i_old) * kernel[i][j]
                - y[j] * (alpha_j - alpha_j_old) * kernel[j][j];
            b = if alpha_i > 0.0 && alpha_i < c {
                b1
            } else if alpha_j > 0.0 && alpha_j < c {
                b2
            } else {
                (b1 + b2) / 2.0
            };
            changed += 1;
        }
        if changed == 0 {
            stable_passes += 1;
        } else {
            stable_passes = 0;
        }
    }

    let mut support_vectors = Vec::new();
    let mut support_coefs = Vec::new();
    for i in 0..n {
        if alpha[i] > 1e-12 {
            support_vectors.push(rows[i].clone());
            support_coefs.push(alpha[i] * y[i]);
        }
    }

    Ok(RbfSvmModel {
        classes,
        support_vectors,
        support_coefs,
        bias: b,
        gamma,
        converged: stable_passes >= max_passes,
        columns: features.columns.clone(),
    })
}

impl RbfSvmModel {
    pub fn decision_value(&self, x: &[f64]) -> f64 {
        let mut acc = self.bias;
        for (sv, coef) in self.support_vectors.iter().zip(&self.support_coefs) {
            acc += coef * rbf_kernel(sv, x, self.gamma);
        }
        acc
    }

    pub fn predict(&self, x: &[f64]) -> Prediction {
        let value = self.decision_value(x);
        let winner = usize::from(value >= 0.0);
        Prediction {
            label: self.classes[winner].clone(),
            confidence: value.abs(),
        }
    }
}
