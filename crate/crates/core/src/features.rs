//! Feature spaces over transcripts: bag of words, the lexical subset,
//! and per-fold standardization.
//!
//! The LM space implemented here is the small lexical subset
//! (type-token ratio, Brunet index, Honoré statistic, words per
//! sentence, sentence count), not a full linguistic-metric suite.
//! Lexical features are computed on the post-disfluency,
//! pre-stopword token sequence; stopword removal would distort
//! lexical diversity.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::preprocess::TokenSequence;

/// The feature spaces of the pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FeatureSpace {
    /// Topological features of the unenriched co-occurrence network.
    Cn,
    /// Topological features of the similarity-enriched network.
    Cne,
    /// Lexical subset standing in for linguistic metrics.
    Lm,
    /// Bag-of-words term counts.
    Bow,
}

impl FeatureSpace {
    pub const ALL: [FeatureSpace; 4] = [
        FeatureSpace::Cn,
        FeatureSpace::Cne,
        FeatureSpace::Lm,
        FeatureSpace::Bow,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FeatureSpace::Cn => "cn",
            FeatureSpace::Cne => "cne",
            FeatureSpace::Lm => "lm",
            FeatureSpace::Bow => "bow",
        }
    }

    /// Paper-style table label.
    pub fn label(self) -> &'static str {
        match self {
            FeatureSpace::Cn => "CN",
            FeatureSpace::Cne => "CNE",
            FeatureSpace::Lm => "LM",
            FeatureSpace::Bow => "BoW",
        }
    }

    pub fn parse(s: &str) -> Result<FeatureSpace> {
        match s.trim().to_ascii_lowercase().as_str() {
            "cn" => Ok(FeatureSpace::Cn),
            "cne" => Ok(FeatureSpace::Cne),
            "lm" => Ok(FeatureSpace::Lm),
            "bow" => Ok(FeatureSpace::Bow),
            other => Err(Error::Config(format!("unknown feature space `{other}`"))),
        }
    }
}

impl std::fmt::Display for FeatureSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An ordered term list with its index map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vocabulary {
    terms: Vec<String>,
    index: HashMap<String, usize>,
}

impl Vocabulary {
    fn from_terms(terms: Vec<String>) -> Vocabulary {
        let index = terms
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        Vocabulary { terms, index }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn index_of(&self, term: &str) -> Option<usize> {
        self.index.get(term).copied()
    }
}

/// Fit a vocabulary on training documents: all distinct tokens, sorted
/// lexicographically for determinism.
pub fn bow_fit<'a, I>(train_docs: I) -> Vocabulary
where
    I: IntoIterator<Item = &'a TokenSequence>,
{
    let mut terms: BTreeSet<String> = BTreeSet::new();
    for doc in train_docs {
        terms.extend(doc.tokens.iter().cloned());
    }
    Vocabulary::from_terms(terms.into_iter().collect())
}

/// Raw term counts of a document over a fitted vocabulary;
/// out-of-vocabulary tokens are ignored.
pub fn bow_transform(doc: &TokenSequence, vocab: &Vocabulary) -> Vec<f64> {
    let mut counts = vec![0.0; vocab.len()];
    for token in &doc.tokens {
        if let Some(i) = vocab.index_of(token) {
            counts[i] += 1.0;
        }
    }
    counts
}

/// Honoré's statistic is capped here when every type is a hapax
/// legomenon (V1 = V makes the denominator vanish).
pub const HONORE_CAP: f64 = 10_000.0;

/// Column names of the lexical feature space, in output order.
pub const LEXICAL_FEATURE_NAMES: [&str; 5] = [
    "type_token_ratio",
    "brunet_index",
    "honore_statistic",
    "words_per_sentence",
    "sentence_count",
];

/// The lexical subset of one transcript.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LexicalFeatures {
    pub type_token_ratio: f64,
    pub brunet_index: f64,
    pub honore_statistic: f64,
    pub words_per_sentence: f64,
    pub sentence_count: f64,
    /// Honoré was undefined (all types hapax) and replaced by the cap.
    pub honore_capped: bool,
}

impl LexicalFeatures {
    pub fn values(&self) -> [f64; 5] {
        [
            self.type_token_ratio,
            self.brunet_index,
            self.honore_statistic,
            self.words_per_sentence,
            self.sentence_count,
        ]
    }
}

/// Compute the lexical subset on a post-disfluency, pre-stopword
/// sequence with N ≥ 1 tokens.
///
/// TTR = V/N; Brunet W = N^(V^-0.165); Honoré R = 100·ln(N)/(1 - V1/V)
/// where V1 counts hapax legomena. R is capped at [`HONORE_CAP`].
pub fn lexical_features(seq: &TokenSequence) -> Result<LexicalFeatures> {
    let n = seq.tokens.len();
    if n == 0 {
        return Err(Error::EmptyInput { id: seq.id.clone() });
    }
    let mut counts: HashMap<&str, usize> = HashMap::new();
    for token in &seq.tokens {
        *counts.entry(token.as_str()).or_insert(0) += 1;
    }
    let v = counts.len();
    let v1 = counts.values().filter(|&&c| c == 1).count();

    let n_f = n as f64;
    let v_f = v as f64;
    let ttr = v_f / n_f;
    let brunet = n_f.powf(v_f.powf(-0.165));

    let (honore, capped) = if v1 == v {
        (HONORE_CAP, true)
    } else {
        let r = 100.0 * n_f.ln() / (1.0 - v1 as f64 / v_f);
        (r.min(HONORE_CAP), r > HONORE_CAP)
    };

    let sentences = seq.sentence_count().max(1);
    Ok(LexicalFeatures {
        type_token_ratio: ttr,
        brunet_index: brunet,
        honore_statistic: honore,
        words_per_sentence: n_f / sentences as f64,
        sentence_count: sentences as f64,
        honore_capped: capped,
    })
}

/// A named feature matrix for one space: one row per transcript.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureMatrix {
    pub space: FeatureSpace,
    pub row_ids: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl FeatureMatrix {
    pub fn new(space: FeatureSpace, columns: Vec<String>) -> FeatureMatrix {
        FeatureMatrix {
            space,
            row_ids: Vec::new(),
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, id: impl Into<String>, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.row_ids.push(id.into());
        self.rows.push(row);
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.columns.len()
    }

    /// Matrix restricted to the given row indices, in their order.
    pub fn select_rows(&self, indices: &[usize]) -> FeatureMatrix {
        FeatureMatrix {
            space: self.space,
            row_ids: indices.iter().map(|&i| self.row_ids[i].clone()).collect(),
            columns: self.columns.clone(),
            rows: indices.iter().map(|&i| self.rows[i].clone()).collect(),
        }
    }
}

/// Per-column z-scoring statistics fitted on a training fold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Standardizer {
    pub means: Vec<f64>,
    pub stds: Vec<f64>,
}

impl Standardizer {
    /// Fit population mean/std per column.
    pub fn fit(train: &FeatureMatrix) -> Standardizer {
        let cols = train.n_cols();
        let n = train.n_rows().max(1) as f64;
        let mut means = vec![0.0; cols];
        for row in &train.rows {
            for (m, v) in means.iter_mut().zip(row) {
                *m += v;
            }
        }
        for m in &mut means {
            *m /= n;
        }
        let mut vars = vec![0.0; cols];
        for row in &train.rows {
            for ((var, v), m) in vars.iter_mut().zip(row).zip(&means) {
                *var += (v - m) * (v - m);
            }
        }
        let stds = vars.into_iter().map(|v| (v / n).sqrt()).collect();
        Standardizer { means, stds }
    }

    /// Z-score a matrix with the fitted statistics; zero-variance
    /// columns map to 0.
    pub fn apply(&self, matrix: &FeatureMatrix) -> FeatureMatrix {
        let mut out = matrix.clone();
        for row in &mut out.rows {
            for ((v, m), s) in row.iter_mut().zip(&self.means).zip(&self.stds) {
                *v = if *s > 0.0 { (*v - m) / s } else { 0.0 };
            }
        }
        out
    }
}

/// Fit on `train`, apply to `apply_to`.
pub fn standardize(train: &FeatureMatrix, apply_to: &FeatureMatrix) -> FeatureMatrix {
    Standardizer::fit(train).apply(apply_to)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn doc(id: &str, tokens: &[&str]) -> TokenSequence {
        TokenSequence {
            id: id.into(),
            label: "x".into(),
            tokens: tokens.iter().map(|s| s.to_string()).collect(),
            sentence_breaks: vec![],
        }
    }

    #[test]
    fn bow_fit_sorts_union_of_terms() {
        let docs = [doc("a", &["cookie", "jar"]), doc("b", &["cookie", "stool"])];
        let vocab = bow_fit(&docs);
        assert_eq!(vocab.terms(), &["cookie", "jar", "stool"]);
    }

    #[test]
    fn bow_fit_distinctness() {
        let docs = [doc("a", &["a", "a", "b"])];
        let vocab = bow_fit(&docs);
        assert_eq!(vocab.terms(), &["a", "b"]);
    }

    #[test]
    fn bow_transform_counts_terms() {
        let docs = [doc("a", &["cookie", "jar"]), doc("b", &["stool"])];
        let vocab = bow_fit(&docs);
        let counts = bow_transform(&doc("q", &["cookie", "cookie", "jar"]), &vocab);
        assert_eq!(counts, vec![2.0, 1.0, 0.0]);
    }

    #[test]
    fn bow_transform_ignores_oov() {
        let vocab = bow_fit(&[doc("a", &["x"])]);
        assert_eq!(bow_transform(&doc("q", &["y", "z"]), &vocab), vec![0.0]);
        assert_eq!(bow_transform(&doc("q", &[]), &vocab), vec![0.0]);
    }

    #[test]
    fn ttr_all_distinct_is_one() {
        let f = lexical_features(&doc("a", &["a", "b", "c", "d"])).unwrap();
        assert_relative_eq!(f.type_token_ratio, 1.0);
    }

    #[test]
    fn lexical_single_type() {
        let f = lexical_features(&doc("a", &["a", "a", "a", "a"])).unwrap();
        assert_relative_eq!(f.type_token_ratio, 0.25);
        // V = 1, V1 = 0: R = 100 ln 4
        assert_relative_eq!(f.honore_statistic, 100.0 * 4.0f64.ln(), max_relative = 1e-12);
        assert!(!f.honore_capped);
    }

    #[test]
    fn honore_known_value() {
        // N = 100, V = 50, V1 = 20: R = 100 ln(100) / 0.6
        let mut tokens: Vec<String> = Vec::new();
        // 20 hapax types, 25 doubled types, 5 types with 6 occurrences
        for i in 0..20 {
            tokens.push(format!("h{i}"));
        }
        for i in 0..25 {
            tokens.push(format!("d{i}"));
            tokens.push(format!("d{i}"));
        }
        for i in 0..5 {
            for _ in 0..6 {
                tokens.push(format!("m{i}"));
            }
        }
        assert_eq!(tokens.len(), 100);
        let refs: Vec<&str> = tokens.iter().map(|s| s.as_str()).collect();
        let f = lexical_features(&doc("a", &refs)).unwrap();
        assert_relative_eq!(f.honore_statistic, 767.528364, max_relative = 1e-8);
    }

    #[test]
    fn honore_all_hapax_is_capped() {
        let f = lexical_features(&doc("a", &["a", "b", "c"])).unwrap();
        assert_eq!(f.honore_statistic, HONORE_CAP);
        assert!(f.honore_capped);
    }

    #[test]
    fn words_per_sentence_uses_breaks() {
        let mut d = doc("a", &["a", "b", "c", "d", "e", "f"]);
        d.sentence_breaks = vec![2, 4];
        let f = lexical_features(&d).unwrap();
        assert_relative_eq!(f.sentence_count, 3.0);
        assert_relative_eq!(f.words_per_sentence, 2.0);
    }

    fn matrix(space: FeatureSpace, rows: &[&[f64]]) -> FeatureMatrix {
        let cols = (0..rows[0].len()).map(|i| format!("c{i}")).collect();
        let mut m = FeatureMatrix::new(space, cols);
        for (i, r) in rows.iter().enumerate() {
            m.push_row(format!("r{i}"), r.to_vec());
        }
        m
    }

    #[test]
    fn standardize_centers_on_train_mean() {
        let train = matrix(FeatureSpace::Lm, &[&[1.0], &[2.0], &[3.0]]);
        let apply = matrix(FeatureSpace::Lm, &[&[2.0]]);
        let out = standardize(&train, &apply);
        assert_relative_eq!(out.rows[0][0], 0.0);
    }

    #[test]
    fn standardize_zero_variance_maps_to_zero() {
        let train = matrix(FeatureSpace::Lm, &[&[5.0], &[5.0]]);
        let out = standardize(&train, &train);
        assert!(out.rows.iter().all(|r| r[0] == 0.0));
    }

    #[test]
    fn standardize_population_std() {
        let train = matrix(FeatureSpace::Lm, &[&[0.0], &[10.0]]);
        let apply = matrix(FeatureSpace::Lm, &[&[10.0]]);
        let out = standardize(&train, &apply);
        assert_relative_eq!(out.rows[0][0], 1.0);
    }

    proptest! {
        /// Transforming a training doc recovers its in-vocab token count.
        #[test]
        fn bow_counts_reconstruct(tokens in proptest::collection::vec("[a-e]{1,2}", 1..30)) {
            let refs: Vec<&str> = tokens.iter().map(|s| s.as_str()).collect();
            let d = doc("a", &refs);
            let vocab = bow_fit(&[d.clone()]);
            let counts = bow_transform(&d, &vocab);
            prop_assert_eq!(counts.iter().sum::<f64>() as usize, tokens.len());
        }

        /// TTR stays in (0, 1]; Brunet decreases as V grows at fixed N.
        #[test]
        fn lexical_ranges(tokens in proptest::collection::vec("[a-h]", 1..40)) {
            let refs: Vec<&str> = tokens.iter().map(|s| s.as_str()).collect();
            let f = lexical_features(&doc("a", &refs)).unwrap();
            prop_assert!(f.type_token_ratio > 0.0 && f.type_token_ratio <= 1.0);
            prop_assert!(f.brunet_index.is_finite());
        }
    }

    #[test]
    fn brunet_decreases_with_vocabulary_growth() {
        // fixed N = 100, increasing V
        let w = |v: f64| 100.0f64.powf(v.powf(-0.165));
        assert!(w(10.0) > w(20.0));
        assert!(w(20.0) > w(50.0));
        assert!(w(50.0) > w(100.0));
    }
}
