//! Stratified cross-validation, the classifier × feature-space ×
//! combiner grid, and the enrichment-threshold sweep.
//!
//! Vocabulary and standardization statistics are always fitted on the
//! training side of a fold; test transcripts never influence them.

mod report;

pub use report::{CellReport, Column, ConfigEcho, EvalReport, Row};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::classify::{majority_vote, train, Hyperparams, ModelKind, Prediction};
use crate::error::{Error, Result};
use crate::features::{
    bow_fit, bow_transform, FeatureMatrix, FeatureSpace, Standardizer, Vocabulary,
};
use crate::pipeline::ProcessedTranscript;
use crate::preprocess::TokenSequence;

/// Test folds over transcript indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldSplit {
    pub folds: Vec<Vec<usize>>,
    pub seed: u64,
}

/// Stratified k-fold assignment: seeded shuffle within each class,
/// then round-robin over folds with a cursor that continues across
/// classes, so both per-class and total fold sizes differ by at most
/// one.
pub fn stratified_kfold(labels: &[String], k: usize, seed: u64) -> Result<FoldSplit> {
    if k < 2 {
        return Err(Error::Config(format!("k = {k} must be at least 2")));
    }
    let mut classes: Vec<&String> = Vec::new();
    for label in labels {
        if !classes.contains(&label) {
            classes.push(label);
        }
    }
    classes.sort();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut folds = vec![Vec::new(); k];
    let mut cursor = 0usize;
    for class in classes {
        let mut members: Vec<usize> = labels
            .iter()
            .enumerate()
            .filter(|(_, l)| *l == class)
            .map(|(i, _)| i)
            .collect();
        if members.len() < k {
            return Err(Error::Split {
                label: class.clone(),
                count: members.len(),
                k,
            });
        }
        members.shuffle(&mut rng);
        for index in members {
            folds[cursor % k].push(index);
            cursor += 1;
        }
    }
    for fold in &mut folds {
        fold.sort_unstable();
    }
    Ok(FoldSplit { folds, seed })
}

/// Corpus view consumed by cross-validation: ids, labels, the content
/// token sequences (for per-fold BoW fitting) and the precomputed
/// per-transcript feature matrices.
#[derive(Debug, Clone)]
pub struct EvalDataset {
    pub ids: Vec<String>,
    pub labels: Vec<String>,
    pub docs: Vec<TokenSequence>,
    pub cn: FeatureMatrix,
    pub cne: Option<FeatureMatrix>,
    pub lm: FeatureMatrix,
}

impl EvalDataset {
    pub fn from_processed(processed: &[ProcessedTranscript]) -> Result<EvalDataset> {
        if processed.is_empty() {
            return Err(Error::Config("no transcripts to evaluate".into()));
        }
        let cn = crate::pipeline::feature_matrix(processed, FeatureSpace::Cn)
            .expect("cn features always available");
        let lm = crate::pipeline::feature_matrix(processed, FeatureSpace::Lm)
            .expect("lm features always available");
        let cne = crate::pipeline::feature_matrix(processed, FeatureSpace::Cne);
        Ok(EvalDataset {
            ids: processed.iter().map(|p| p.id.clone()).collect(),
            labels: processed.iter().map(|p| p.label.clone()).collect(),
            docs: processed.iter().map(|p| p.content.clone()).collect(),
            cn,
            cne,
            lm,
        })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }
}

/// Cross-validation settings.
#[derive(Debug, Clone)]
pub struct EvalConfig {
    pub spaces: Vec<FeatureSpace>,
    pub models: Vec<ModelKind>,
    pub combine_ensemble: bool,
    pub combine_multiview: bool,
    /// Allow two-member votes (decided by the confidence-sum rule).
    /// Off by default: those cells are reported as unavailable.
    pub allow_pair_votes: bool,
    pub standardize: bool,
    pub k: usize,
    pub seed: u64,
    pub hyperparams: Hyperparams,
    /// Echoed into reports; set by callers that ran enrichment.
    pub threshold: Option<f64>,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            spaces: FeatureSpace::ALL.to_vec(),
            models: ModelKind::ALL.to_vec(),
            combine_ensemble: true,
            combine_multiview: true,
            allow_pair_votes: false,
            standardize: true,
            k: 5,
            seed: 42,
            hyperparams: Hyperparams::default(),
            threshold: None,
        }
    }
}

/// Fitted per-fold artifacts, exposed so leakage properties can be
/// asserted directly.
#[derive(Debug, Clone, PartialEq)]
pub struct FoldPreparation {
    pub vocabulary: Option<Vocabulary>,
    pub standardizer: Option<Standardizer>,
}

/// Materialize the train/test matrices of one fold for one space.
/// Fitting (vocabulary, standardization) sees training rows only.
pub fn prepare_fold(
    ds: &EvalDataset,
    space: FeatureSpace,
    train_idx: &[usize],
    test_idx: &[usize],
    standardize: bool,
) -> Result<(FeatureMatrix, FeatureMatrix, FoldPreparation)> {
    let mut prep = FoldPreparation {
        vocabulary: None,
        standardizer: None,
    };
    let (mut train, mut test) = match space {
        FeatureSpace::Bow => {
            let train_docs: Vec<&TokenSequence> = train_idx.iter().map(|&i| &ds.docs[i]).collect();
            let vocab = bow_fit(train_docs.iter().copied());
            let mut train = FeatureMatrix::new(space, vocab.terms().to_vec());
            for &i in train_idx {
                train.push_row(ds.ids[i].clone(), bow_transform(&ds.docs[i], &vocab));
            }
            let mut test = FeatureMatrix::new(space, vocab.terms().to_vec());
            for &i in test_idx {
                test.push_row(ds.ids[i].clone(), bow_transform(&ds.docs[i], &vocab));
            }
            prep.vocabulary = Some(vocab);
            (train, test)
        }
        FeatureSpace::Cn => (ds.cn.select_rows(train_idx), ds.cn.select_rows(test_idx)),
        FeatureSpace::Cne => {
            let cne = ds.cne.as_ref().ok_or_else(|| {
                Error::Config("CNE features requested but no embeddings were loaded".into())
            })?;
            (cne.select_rows(train_idx), cne.select_rows(test_idx))
        }
        FeatureSpace::Lm => (ds.lm.select_rows(train_idx), ds.lm.select_rows(test_idx)),
    };
    if standardize {
        let standardizer = Standardizer::fit(&train);
        train = standardizer.apply(&train);
        test = standardizer.apply(&test);
        prep.standardizer = Some(standardizer);
    }
    Ok((train, test, prep))
}

/// Stable per-cell seed derivation (splitmix-style).
fn cell_seed(base: u64, fold: usize, space: FeatureSpace, model: ModelKind) -> u64 {
    let mut z = base
        .wrapping_add(0x9e3779b97f4a7c15u64.wrapping_mul(fold as u64 + 1))
        .wrapping_add(1_000_003u64.wrapping_mul(space as u64 + 1))
        .wrapping_add(10_007u64.wrapping_mul(model as u64 + 1));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Multi-view column combinations: subsets (size ≥ 2) of the requested
/// spaces, excluding CN (superseded by CNE in combinations), in table
/// order.
fn view_combos(spaces: &[FeatureSpace]) -> Vec<Vec<FeatureSpace>> {
    let order = [FeatureSpace::Cne, FeatureSpace::Lm, FeatureSpace::Bow];
    let present: Vec<FeatureSpace> = order
        .iter()
        .copied()
        .filter(|s| spaces.contains(s))
        .collect();
    let n = present.len();
    let mut masks: Vec<u32> = (1u32..1 << n).filter(|m| m.count_ones() >= 2).collect();
    masks.sort_by_key(|&m| (m.count_ones(), m));
    masks
        .into_iter()
        .map(|mask| {
            (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| present[i])
                .collect()
        })
        .collect()
}

struct FoldOutcome {
    test_labels: Vec<String>,
    /// predictions[space][model][test_item]
    predictions: Vec<Vec<Vec<Prediction>>>,
}

/// Run stratified k-fold cross-validation over the full grid.
pub fn cross_validate(ds: &EvalDataset, cfg: &EvalConfig) -> Result<EvalReport> {
    if cfg.spaces.is_empty() || cfg.models.is_empty() {
        return Err(Error::Config("need at least one space and one model".into()));
    }
    if cfg.spaces.contains(&FeatureSpace::Cne) && ds.cne.is_none() {
        return Err(Error::Config(
            "CNE features requested but no embeddings were loaded".into(),
        ));
    }
    let split = stratified_kfold(&ds.labels, cfg.k, cfg.seed)?;
    let all: Vec<usize> = (0..ds.len()).collect();

    let fold_outcomes: Vec<Result<FoldOutcome>> = split
        .folds
        .par_iter()
        .enumerate()
        .map(|(f, test_idx)| {
            let train_idx: Vec<usize> = all
                .iter()
                .copied()
                .filter(|i| !test_idx.contains(i))
                .collect();
            let train_labels: Vec<String> =
                train_idx.iter().map(|&i| ds.labels[i].clone()).collect();
            let mut per_space = Vec::with_capacity(cfg.spaces.len());
            for &space in &cfg.spaces {
                let (train_m, test_m, _) =
                    prepare_fold(ds, space, &train_idx, test_idx, cfg.standardize)?;
                let mut per_model = Vec::with_capacity(cfg.models.len());
                for &model in &cfg.models {
                    let seed = cell_seed(cfg.seed, f, space, model);
                    let trained =
                        train(model, &train_m, &train_labels, &cfg.hyperparams, seed).map_err(
                            |e| {
                                Error::Training(format!(
                                    "fold {f}, space {space}, model {model}: {e}"
                                ))
                            },
                        )?;
                    let preds: Vec<Prediction> =
                        test_m.rows.iter().map(|row| trained.predict(row)).collect();
                    per_model.push(preds);
                }
                per_space.push(per_model);
            }
            Ok(FoldOutcome {
                test_labels: test_idx.iter().map(|&i| ds.labels[i].clone()).collect(),
                predictions: per_space,
            })
        })
        .collect();

    let fold_outcomes: Vec<FoldOutcome> =
        fold_outcomes.into_iter().collect::<Result<Vec<_>>>()?;

    // column layout: singles in canonical order, then combos
    let mut columns: Vec<Column> = FeatureSpace::ALL
        .iter()
        .copied()
        .filter(|s| cfg.spaces.contains(s))
        .map(Column::Single)
        .collect();
    let combos = if cfg.combine_multiview {
        view_combos(&cfg.spaces)
    } else {
        Vec::new()
    };
    columns.extend(combos.iter().cloned().map(Column::Combo));

    let mut rows: Vec<Row> = cfg.models.iter().copied().map(Row::Model).collect();
    if cfg.combine_ensemble && cfg.models.len() >= 2 {
        rows.push(Row::Ensemble);
    }

    let space_index = |s: FeatureSpace| cfg.spaces.iter().position(|&x| x == s).expect("requested");
    let model_index = |m: ModelKind| cfg.models.iter().position(|&x| x == m).expect("requested");

    let vote_allowed =
        |members: usize| members >= 3 || (members == 2 && cfg.allow_pair_votes);

    let mut cells: Vec<Vec<Option<CellReport>>> = Vec::with_capacity(rows.len());
    for row in &rows {
        let mut row_cells = Vec::with_capacity(columns.len());
        for column in &columns {
            // the (model, space) members voting in this cell
            let members: Vec<(usize, usize)> = match row {
                Row::Model(kind) => column
                    .spaces()
                    .iter()
                    .map(|&s| (model_index(*kind), space_index(s)))
                    .collect(),
                Row::Ensemble => column
                    .spaces()
                    .iter()
                    .flat_map(|&s| {
                        (0..cfg.models.len()).map(move |m| (m, s))
                    })
                    .map(|(m, s)| (m, space_index(s)))
                    .collect(),
            };
            if members.len() > 1 && !vote_allowed(members.len()) {
                row_cells.push(None);
                continue;
            }
            let mut fold_accuracies = Vec::with_capacity(fold_outcomes.len());
            for outcome in &fold_outcomes {
                let mut correct = 0usize;
                for (item, truth) in outcome.test_labels.iter().enumerate() {
                    let label = if members.len() == 1 {
                        let (m, s) = members[0];
                        outcome.predictions[s][m][item].label.clone()
                    } else {
                        let votes: Vec<Prediction> = members
                            .iter()
                            .map(|&(m, s)| outcome.predictions[s][m][item].clone())
                            .collect();
                        majority_vote(&votes)?.label
                    };
                    if label == *truth {
                        correct += 1;
                    }
                }
                fold_accuracies.push(correct as f64 / outcome.test_labels.len() as f64);
            }
            let mean_accuracy =
                fold_accuracies.iter().sum::<f64>() / fold_accuracies.len() as f64;
            row_cells.push(Some(CellReport {
                mean_accuracy,
                fold_accuracies,
                members: members.len(),
            }));
        }
        cells.push(row_cells);
    }

    Ok(EvalReport {
        config: ConfigEcho {
            k: cfg.k,
            seed: cfg.seed,
            threshold: cfg.threshold,
            standardize: cfg.standardize,
            allow_pair_votes: cfg.allow_pair_votes,
            models: cfg.models.iter().map(|m| m.as_str().to_string()).collect(),
            spaces: cfg.spaces.iter().map(|s| s.as_str().to_string()).collect(),
            hyperparams: cfg.hyperparams.clone(),
        },
        columns,
        rows,
        cells,
    })
}

/// One point of a threshold sweep curve.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub threshold: f64,
    pub accuracy: f64,
    pub report: EvalReport,
}

/// Sweep outcome: the full curve plus the winning threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub curve: Vec<SweepPoint>,
    pub best_threshold: f64,
    pub best_accuracy: f64,
    pub reference_row: String,
    pub reference_column: String,
}

/// Default reference cell for threshold selection.
pub const SWEEP_REFERENCE: (&str, &str) = ("svm-rbf", "cne");

/// Evaluate every threshold with `build` supplying the dataset at that
/// threshold; the best is the argmax of the reference cell's mean
/// accuracy, ties resolved toward the larger (sparser) threshold.
pub fn threshold_sweep<F>(
    build: F,
    thresholds: &[f64],
    cfg: &EvalConfig,
    reference: (&str, &str),
) -> Result<SweepResult>
where
    F: Fn(f64) -> Result<EvalDataset>,
{
    if thresholds.is_empty() {
        return Err(Error::Config("threshold sweep needs at least one threshold".into()));
    }
    if thresholds.iter().any(|&t| !(t > 0.0 && t <= 1.0)) {
        return Err(Error::Config("thresholds must lie in (0, 1]".into()));
    }
    let mut sorted = thresholds.to_vec();
    sorted.sort_by(f64::total_cmp);
    sorted.dedup();

    let mut curve = Vec::with_capacity(sorted.len());
    for &threshold in &sorted {
        let ds = build(threshold)?;
        let mut cell_cfg = cfg.clone();
        cell_cfg.threshold = Some(threshold);
        let report = cross_validate(&ds, &cell_cfg)?;
        let cell = report.cell(reference.0, reference.1).ok_or_else(|| {
            Error::Config(format!(
                "reference cell {} × {} not present in the report",
                reference.0, reference.1
            ))
        })?;
        curve.push(SweepPoint {
            threshold,
            accuracy: cell.mean_accuracy,
            report,
        });
    }

    // ties go to the larger threshold: scan ascending with >=
    let mut best = &curve[0];
    for point in &curve {
        if point.accuracy >= best.accuracy {
            best = point;
        }
    }
    Ok(SweepResult {
        best_threshold: best.threshold,
        best_accuracy: best.accuracy,
        reference_row: reference.0.to_string(),
        reference_column: reference.1.to_string(),
        curve,
    })
}
