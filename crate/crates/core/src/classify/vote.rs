//! Majority voting across classifier predictions.

use crate::error::{Error, Result};

use super::Prediction;

/// Result of a majority vote with tie diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct VoteOutcome {
    pub label: String,
    /// Vote counts tied; summed confidence decided.
    pub tie_broken_by_confidence: bool,
    /// Confidence sums tied too; fell back to the first member.
    pub tie_fallback_first_member: bool,
}

/// The most frequent label; count ties resolve by larger summed
/// confidence, remaining ties by the first member's label.
pub fn majority_vote(predictions: &[Prediction]) -> Result<VoteOutcome> {
    if predictions.is_empty() {
        return Err(Error::Vote);
    }
    // tallies in first-appearance order
    let mut tallies: Vec<(&str, usize, f64)> = Vec::new();
    for p in predictions {
        match tallies.iter_mut().find(|(l, _, _)| *l == p.label) {
            Some((_, count, conf)) => {
                *count += 1;
                *conf += p.confidence;
            }
            None => tallies.push((&p.label, 1, p.confidence)),
        }
    }

    let max_count = tallies.iter().map(|&(_, c, _)| c).max().expect("non-empty");
    let count_tied: Vec<&(&str, usize, f64)> =
        tallies.iter().filter(|&&(_, c, _)| c == max_count).collect();
    if count_tied.len() == 1 {
        return Ok(VoteOutcome {
            label: count_tied[0].0.to_string(),
            tie_broken_by_confidence: false,
            tie_fallback_first_member: false,
        });
    }

    let best_conf = count_tied
        .iter()
        .map(|&&(_, _, conf)| conf)
        .fold(f64::NEG_INFINITY, f64::max);
    let conf_tied: Vec<&&(&str, usize, f64)> = count_tied
        .iter()
        .filter(|&&&(_, _, conf)| conf == best_conf)
        .collect();
    Ok(VoteOutcome {
        label: conf_tied[0].0.to_string(),
        tie_broken_by_confidence: conf_tied.len() == 1,
        tie_fallback_first_member: conf_tied.len() > 1,
    })
}
