//! k-nearest-neighbor classifier.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::FeatureMatrix;

use super::{binary_classes, Prediction};

/// Memorized training set with a fixed k.
///
/// Tie rules: distance ties prefer the lower training-row index; label
/// ties (possible for even k) resolve to the nearest neighbor's label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KnnModel {
    pub classes: [String; 2],
    pub k: usize,
    pub train_rows: Vec<Vec<f64>>,
    /// Class index (0 or 1) per training row.
    pub train_classes: Vec<u8>,
    pub columns: Vec<String>,
}

pub(super) fn train_knn(features: &FeatureMatrix, labels: &[String], k: usize) -> Result<KnnModel> {
    if k == 0 || k > features.n_rows() {
        return Err(Error::Training(format!(
            "k = {k} outside 1..={}",
            features.n_rows()
        )));
    }
    let classes = binary_classes(labels)?;
    let train_classes = labels
        .iter()
        .map(|l| u8::from(*l == classes[1]))
        .collect();
    Ok(KnnModel {
        classes,
        k,
        train_rows: features.rows.clone(),
        train_classes,
        columns: features.columns.clone(),
    })
}

fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

impl KnnModel {
    pub fn predict(&self, x: &[f64]) -> Prediction {
        let mut order: Vec<(f64, usize)> = self
            .train_rows
            .iter()
            .enumerate()
            .map(|(i, row)| (squared_distance(x, row), i))
            .collect();
        order.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

        let neighbors = &order[..self.k];
        let votes_one: usize = neighbors
            .iter()
            .filter(|(_, i)| self.train_classes[*i] == 1)
            .count();
        let votes_zero = self.k - votes_one;

        let winner = match votes_one.cmp(&votes_zero) {
            std::cmp::Ordering::Greater => 1u8,
            std::cmp::Ordering::Less => 0u8,
            std::cmp::Ordering::Equal => self.train_classes[neighbors[0].1],
        };
        let winner_votes = if winner == 1 { votes_one } else { votes_zero };
        Prediction {
            label: self.classes[winner as usize].clone(),
            confidence: winner_votes as f64 / self.k as f64,
        }
    }
}
