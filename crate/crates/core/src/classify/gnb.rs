//! Gaussian Naive Bayes.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::features::FeatureMatrix;

use super::{binary_classes, Prediction};

const VARIANCE_FLOOR: f64 = 1e-9;

/// Per-class Gaussian feature model with frequency priors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GnbModel {
    pub classes: [String; 2],
    pub priors: [f64; 2],
    pub means: [Vec<f64>; 2],
    pub variances: [Vec<f64>; 2],
    pub columns: Vec<String>,
}

pub(super) fn train_gnb(features: &FeatureMatrix, labels: &[String]) -> Result<GnbModel> {
    let classes = binary_classes(labels)?;
    let d = features.n_cols();

    let mut means = [vec![0.0; d], vec![0.0; d]];
    let mut variances = [vec![0.0; d], vec![0.0; d]];
    let mut counts = [0usize; 2];

    for (row, label) in features.rows.iter().zip(labels) {
        let c = if *label == classes[1] { 1 } else { 0 };
        counts[c] += 1;
        for (m, v) in means[c].iter_mut().zip(row) {
            *m += v;
        }
    }
    for c in 0..2 {
        for m in &mut means[c] {
            *m /= counts[c] as f64;
        }
    }
    for (row, label) in features.rows.iter().zip(labels) {
        let c = if *label == classes[1] { 1 } else { 0 };
        for ((var, v), m) in variances[c].iter_mut().zip(row).zip(&means[c]) {
            *var += (v - m) * (v - m);
        }
    }
    for c in 0..2 {
        for var in &mut variances[c] {
            *var = (*var / counts[c] as f64).max(VARIANCE_FLOOR);
        }
    }

    let n = labels.len() as f64;
    Ok(GnbModel {
        classes,
        priors: [counts[0] as f64 / n, counts[1] as f64 / n],
        means,
        variances,
        columns: features.columns.clone(),
    })
}

impl GnbModel {
    /// Argmax of log prior + summed log Gaussian densities; confidence
    /// is the posterior probability of the predicted class.
    pub fn predict(&self, x: &[f64]) -> Prediction {
        let log_joint = [self.log_joint(0, x), self.log_joint(1, x)];
        let winner = usize::from(log_joint[1] > log_joint[0]);
        // posterior via log-sum-exp
        let max = log_joint[0].max(log_joint[1]);
        let z = (log_joint[0] - max).exp() + (log_joint[1] - max).exp();
        let posterior = (log_joint[winner] - max).exp() / z;
        Prediction {
            label: self.classes[winner].clone(),
            confidence: posterior,
        }
    }

    fn log_joint(&self, c: usize, x: &[f64]) -> f64 {
        let mut acc = self.priors[c].ln();
        for ((v, m), var) in x.iter().zip(&self.means[c]).zip(&self.variances[c]) {
            acc += -0.5 * (2.0 * std::f64::consts::PI * var).ln() - (v - m) * (v - m) / (2.0 * var);
        }
        acc
    }
}
