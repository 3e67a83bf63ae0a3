//! Per-transcript orchestration: preprocessing, network construction,
//! enrichment and feature extraction.
//!
//! Transcripts are independent, so the corpus runs in parallel; every
//! step is a pure function of its inputs.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::embedding::EmbeddingTable;
use crate::error::{Error, Result};
use crate::features::{
    bow_fit, bow_transform, lexical_features, FeatureMatrix, FeatureSpace, LexicalFeatures,
    LEXICAL_FEATURE_NAMES,
};
use crate::network::{build_cooccurrence, enrich, EnrichmentReport, Network};
use crate::preprocess::{
    default_fillers, remove_stopwords_punct, strip_disfluencies, tokenize, RawTranscript,
    TokenSequence,
};
use crate::topology::{compute_features, GraphMetricSet, MetricConfig, TopoFeatureVector};

/// Settings for the transcript-to-features pipeline.
#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub stopwords: HashSet<String>,
    pub fillers: HashSet<String>,
    pub cross_sentence: bool,
    /// Cosine threshold for similarity edges.
    pub threshold: f64,
    pub metrics: MetricConfig,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            stopwords: HashSet::new(),
            fillers: default_fillers(),
            cross_sentence: true,
            threshold: 0.5,
            metrics: MetricConfig::default(),
        }
    }
}

/// Everything the pipeline derives from one transcript.
#[derive(Debug, Clone)]
pub struct ProcessedTranscript {
    pub id: String,
    pub label: String,
    /// Content tokens after stopword/punctuation removal.
    pub content: TokenSequence,
    /// Lexical features from the pre-stopword sequence.
    pub lexical: LexicalFeatures,
    pub cn_network: Network,
    pub cn_features: TopoFeatureVector,
    pub cn_flags: GraphMetricSet,
    /// Present when an embedding table was supplied.
    pub cne_network: Option<Network>,
    pub cne_features: Option<TopoFeatureVector>,
    pub cne_flags: Option<GraphMetricSet>,
    pub enrichment: Option<EnrichmentReport>,
}

/// A transcript excluded from modeling, with the reason.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedTranscript {
    pub id: String,
    pub label: String,
    pub reason: String,
}

/// Run the full pipeline on one transcript.
pub fn process_transcript(
    raw: &RawTranscript,
    embeddings: Option<&EmbeddingTable>,
    cfg: &PipelineConfig,
) -> Result<ProcessedTranscript> {
    let tokens = tokenize(raw)?;
    let fluent = strip_disfluencies(&tokens, &cfg.fillers);
    if fluent.tokens.is_empty() {
        return Err(Error::EmptyAfterFiltering { id: raw.id.clone() });
    }
    let lexical = lexical_features(&fluent)?;
    let content = remove_stopwords_punct(&fluent, &cfg.stopwords)?;

    let cn_network = build_cooccurrence(&content, cfg.cross_sentence)?;
    let (cn_features, cn_flags) = compute_features(&cn_network, &cfg.metrics);

    let (cne_network, cne_features, cne_flags, enrichment) = match embeddings {
        Some(table) => {
            let (net, report) = enrich(&cn_network, table, cfg.threshold);
            let (features, flags) = compute_features(&net, &cfg.metrics);
            (Some(net), Some(features), Some(flags), Some(report))
        }
        None => (None, None, None, None),
    };

    Ok(ProcessedTranscript {
        id: raw.id.clone(),
        label: raw.label.clone(),
        content,
        lexical,
        cn_network,
        cn_features,
        cn_flags,
        cne_network,
        cne_features,
        cne_flags,
        enrichment,
    })
}

/// Process a corpus in parallel. Transcripts that reduce to nothing
/// are returned separately instead of failing the run.
pub fn process_corpus(
    raws: &[RawTranscript],
    embeddings: Option<&EmbeddingTable>,
    cfg: &PipelineConfig,
) -> (Vec<ProcessedTranscript>, Vec<SkippedTranscript>) {
    let results: Vec<Result<ProcessedTranscript>> = raws
        .par_iter()
        .map(|raw| process_transcript(raw, embeddings, cfg))
        .collect();

    let mut processed = Vec::new();
    let mut skipped = Vec::new();
    for (raw, result) in raws.iter().zip(results) {
        match result {
            Ok(p) => processed.push(p),
            Err(err) => skipped.push(SkippedTranscript {
                id: raw.id.clone(),
                label: raw.label.clone(),
                reason: err.to_string(),
            }),
        }
    }
    (processed, skipped)
}

/// Assemble the per-space feature matrices of a processed corpus.
///
/// The BoW matrix here is fitted on the whole corpus and meant for
/// feature dumps; cross-validation refits it per training fold.
pub fn feature_matrix(
    processed: &[ProcessedTranscript],
    space: FeatureSpace,
) -> Option<FeatureMatrix> {
    if processed.is_empty() {
        return None;
    }
    let matrix = match space {
        FeatureSpace::Cn => {
            let columns = TopoFeatureVector::names().iter().map(|s| s.to_string()).collect();
            let mut m = FeatureMatrix::new(space, columns);
            for p in processed {
                m.push_row(p.id.clone(), p.cn_features.values().to_vec());
            }
            m
        }
        FeatureSpace::Cne => {
            let columns = TopoFeatureVector::names().iter().map(|s| s.to_string()).collect();
            let mut m = FeatureMatrix::new(space, columns);
            for p in processed {
                m.push_row(p.id.clone(), p.cne_features.as_ref()?.values().to_vec());
            }
            m
        }
        FeatureSpace::Lm => {
            let columns = LEXICAL_FEATURE_NAMES.iter().map(|s| s.to_string()).collect();
            let mut m = FeatureMatrix::new(space, columns);
            for p in processed {
                m.push_row(p.id.clone(), p.lexical.values().to_vec());
            }
            m
        }
        FeatureSpace::Bow => {
            let docs: Vec<&TokenSequence> = processed.iter().map(|p| &p.content).collect();
            let vocab = bow_fit(docs.iter().copied());
            let mut m = FeatureMatrix::new(space, vocab.terms().to_vec());
            for p in processed {
                m.push_row(p.id.clone(), bow_transform(&p.content, &vocab));
            }
            m
        }
    };
    Some(matrix)
}

/// Write a feature matrix as `id,label,<feature names>` CSV.
pub fn write_feature_csv<W: std::io::Write>(
    matrix: &FeatureMatrix,
    labels: &[String],
    writer: W,
) -> Result<()> {
    debug_assert_eq!(matrix.n_rows(), labels.len());
    let mut w = csv::Writer::from_writer(writer);
    let mut header = vec!["id".to_string(), "label".to_string()];
    header.extend(matrix.columns.iter().cloned());
    w.write_record(&header)?;
    for ((id, label), row) in matrix.row_ids.iter().zip(labels).zip(&matrix.rows) {
        let mut record = vec![id.clone(), label.clone()];
        record.extend(row.iter().map(|v| format_float(*v)));
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

/// Shortest-roundtrip float formatting; stable across runs.
pub fn format_float(v: f64) -> String {
    format!("{v}")
}
