//! Binary classifiers over feature matrices, plus majority voting.
//!
//! All trainers are deterministic given (data, hyperparameters, seed)
//! and share one contract: train on a [`FeatureMatrix`] with string
//! labels, predict a label with a real-valued confidence score.

mod gnb;
mod knn;
mod svm;
mod vote;

pub use gnb::GnbModel;
pub use knn::KnnModel;
pub use svm::{LinearSvmModel, RbfSvmModel};
pub use vote::{majority_vote, VoteOutcome};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::FeatureMatrix;

/// The classifier algorithms of the pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ModelKind {
    Gnb,
    Knn,
    SvmLinear,
    SvmRbf,
}

impl ModelKind {
    pub const ALL: [ModelKind; 4] = [
        ModelKind::SvmLinear,
        ModelKind::SvmRbf,
        ModelKind::Knn,
        ModelKind::Gnb,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::Gnb => "gnb",
            ModelKind::Knn => "knn",
            ModelKind::SvmLinear => "svm-linear",
            ModelKind::SvmRbf => "svm-rbf",
        }
    }

    pub fn parse(s: &str) -> Result<ModelKind> {
        match s.trim().to_ascii_lowercase().as_str() {
            "gnb" | "g-nb" => Ok(ModelKind::Gnb),
            "knn" | "k-nn" => Ok(ModelKind::Knn),
            "svm-linear" | "svm_linear" | "svmlinear" => Ok(ModelKind::SvmLinear),
            "svm-rbf" | "svm_rbf" | "svmrbf" => Ok(ModelKind::SvmRbf),
            other => Err(Error::Config(format!("unknown model `{other}`"))),
        }
    }
}

impl std::fmt::Display for ModelKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A predicted label with the model's confidence in it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    pub label: String,
    pub confidence: f64,
}

/// Hyperparameters shared by the trainers. Defaults: k = 3, C = 1,
/// γ = 1/d, 200 Pegasos epochs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Hyperparams {
    pub knn_k: usize,
    pub svm_c: f64,
    /// RBF kernel width; `None` means 1 / feature count.
    pub svm_gamma: Option<f64>,
    pub pegasos_epochs: usize,
    pub smo_max_passes: usize,
    pub smo_tol: f64,
}

impl Default for Hyperparams {
    fn default() -> Self {
        Hyperparams {
            knn_k: 3,
            svm_c: 1.0,
            svm_gamma: None,
            pegasos_epochs: 200,
            smo_max_passes: 10,
            smo_tol: 1e-3,
        }
    }
}

/// A trained binary classifier.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum TrainedModel {
    Gnb(GnbModel),
    Knn(KnnModel),
    SvmLinear(LinearSvmModel),
    SvmRbf(RbfSvmModel),
}

impl TrainedModel {
    pub fn kind(&self) -> ModelKind {
        match self {
            TrainedModel::Gnb(_) => ModelKind::Gnb,
            TrainedModel::Knn(_) => ModelKind::Knn,
            TrainedModel::SvmLinear(_) => ModelKind::SvmLinear,
            TrainedModel::SvmRbf(_) => ModelKind::SvmRbf,
        }
    }

    /// The two class labels, in sorted order.
    pub fn classes(&self) -> &[String; 2] {
        match self {
            TrainedModel::Gnb(m) => &m.classes,
            TrainedModel::Knn(m) => &m.classes,
            TrainedModel::SvmLinear(m) => &m.classes,
            TrainedModel::SvmRbf(m) => &m.classes,
        }
    }

    pub fn columns(&self) -> &[String] {
        match self {
            TrainedModel::Gnb(m) => &m.columns,
            TrainedModel::Knn(m) => &m.columns,
            TrainedModel::SvmLinear(m) => &m.columns,
            TrainedModel::SvmRbf(m) => &m.columns,
        }
    }

    pub fn predict(&self, x: &[f64]) -> Prediction {
        match self {
            TrainedModel::Gnb(m) => m.predict(x),
            TrainedModel::Knn(m) => m.predict(x),
            TrainedModel::SvmLinear(m) => m.predict(x),
            TrainedModel::SvmRbf(m) => m.predict(x),
        }
    }
}

/// Train a classifier of the requested kind.
pub fn train(
    kind: ModelKind,
    features: &FeatureMatrix,
    labels: &[String],
    hp: &Hyperparams,
    seed: u64,
) -> Result<TrainedModel> {
    validate_training_input(features, labels)?;
    match kind {
        ModelKind::Gnb => Ok(TrainedModel::Gnb(gnb::train_gnb(features, labels)?)),
        ModelKind::Knn => Ok(TrainedModel::Knn(knn::train_knn(features, labels, hp.knn_k)?)),
        ModelKind::SvmLinear => Ok(TrainedModel::SvmLinear(svm::train_svm_linear(
            features,
            labels,
            hp.svm_c,
            hp.pegasos_epochs,
            seed,
        )?)),
        ModelKind::SvmRbf => {
            let gamma = hp
                .svm_gamma
                .unwrap_or_else(|| 1.0 / features.n_cols().max(1) as f64);
            Ok(TrainedModel::SvmRbf(svm::train_svm_rbf(
                features,
                labels,
                hp.svm_c,
                gamma,
                hp.smo_max_passes,
                hp.smo_tol,
                seed,
            )?))
        }
    }
}

fn validate_training_input(features: &FeatureMatrix, labels: &[String]) -> Result<()> {
    if features.n_rows() != labels.len() {
        return Err(Error::Training(format!(
            "{} rows but {} labels",
            features.n_rows(),
            labels.len()
        )));
    }
    if features.n_rows() == 0 {
        return Err(Error::Training("no training samples".into()));
    }
    for row in &features.rows {
        if row.iter().any(|v| !v.is_finite()) {
            return Err(Error::Training("non-finite feature value".into()));
        }
    }
    Ok(())
}

/// The two distinct labels of a training set, sorted. Errors unless
/// exactly two classes are present (binary-only pipeline).
pub(crate) fn binary_classes(labels: &[String]) -> Result<[String; 2]> {
    let mut distinct: Vec<&String> = Vec::new();
    for label in labels {
        if !distinct.contains(&label) {
            distinct.push(label);
        }
    }
    distinct.sort();
    match distinct.as_slice() {
        [a, b] => Ok([(*a).clone(), (*b).clone()]),
        _ => Err(Error::Training(format!(
            "expected exactly 2 classes, found {}",
            distinct.len()
        ))),
    }
}

/// Versioned model serialization format tag.
pub const MODEL_FORMAT: &str = "cognet-model/1";

#[derive(Serialize, Deserialize)]
struct SavedModel {
    format: String,
    model: TrainedModel,
}

/// Serialize a model as versioned JSON.
pub fn save_model<W: std::io::Write>(model: &TrainedModel, writer: W) -> Result<()> {
    let saved = SavedModel {
        format: MODEL_FORMAT.to_string(),
        model: model.clone(),
    };
    serde_json::to_writer_pretty(writer, &saved)?;
    Ok(())
}

/// Load a model written by [`save_model`], rejecting unknown formats.
pub fn load_model<R: std::io::Read>(reader: R) -> Result<TrainedModel> {
    let saved: SavedModel = serde_json::from_reader(reader)?;
    if saved.format != MODEL_FORMAT {
        return Err(Error::Config(format!(
            "unsupported model format `{}`",
            saved.format
        )));
    }
    Ok(saved.model)
}


#[cfg(test)]
mod tests {
    use super::test_util::{labels, matrix};
    use super::*;

    #[test]
    fn binary_classes_are_sorted() {
        let y = labels(&["b", "a", "b"]);
        assert_eq!(binary_classes(&y).unwrap(), ["a".to_string(), "b".to_string()]);
    }

    #[test]
    fn one_class_is_a_training_error() {
        let y = labels(&["a", "a"]);
        assert!(matches!(binary_classes(&y).unwrap_err(), Error::Training(_)));
    }

    #[test]
    fn non_finite_features_are_rejected() {
        let m = matrix(&[&[1.0], &[f64::NAN]]);
        let y = labels(&["a", "b"]);
        let err = train(ModelKind::SvmLinear, &m, &y, &Hyperparams::default(), 1).unwrap_err();
        assert!(matches!(err, Error::Training(_)));
    }

    #[test]
    fn model_roundtrips_through_serialization() {
        let m = matrix(&[&[-1.0, 0.0], &[-1.2, 0.1], &[1.0, 0.0], &[1.2, -0.1]]);
        let y = labels(&["neg", "neg", "pos", "pos"]);
        for kind in ModelKind::ALL {
            let model = train(kind, &m, &y, &Hyperparams::default(), 7).unwrap();
            let mut buf = Vec::new();
            save_model(&model, &mut buf).unwrap();
            let loaded = load_model(buf.as_slice()).unwrap();
            assert_eq!(loaded, model);
            let p = loaded.predict(&[1.1, 0.0]);
            assert_eq!(p.label, "pos");
        }
    }

    #[test]
    fn unknown_format_is_rejected() {
        let err = load_model(br#"{"format":"other/9","model":null}"#.as_slice()).unwrap_err();
        assert!(matches!(err, Error::Json(_) | Error::Config(_)));
    }

    #[test]
    fn all_models_fit_a_separable_problem() {
        // sanity floor: ≥ 95% training accuracy on separated blobs
        let mut rows: Vec<Vec<f64>> = Vec::new();
        let mut y = Vec::new();
        for i in 0..20 {
            let jitter = (i as f64) * 0.01;
            rows.push(vec![-3.0 + jitter, -3.0 - jitter]);
            y.push("a".to_string());
            rows.push(vec![3.0 - jitter, 3.0 + jitter]);
            y.push("b".to_string());
        }
        let refs: Vec<&[f64]> = rows.iter().map(|r| r.as_slice()).collect();
        let m = matrix(&refs);
        for kind in ModelKind::ALL {
            let model = train(kind, &m, &y, &Hyperparams::default(), 42).unwrap();
            let correct = rows
                .iter()
                .zip(&y)
                .filter(|(x, label)| model.predict(x).label == **label)
                .count();
            assert!(
                correct as f64 / rows.len() as f64 >= 0.95,
                "{kind} fit only {correct}/{}",
                rows.len()
            );
        }
    }
}
