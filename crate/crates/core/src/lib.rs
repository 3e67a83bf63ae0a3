//! Speech transcripts as enriched word co-occurrence networks.
//!
//! The pipeline turns labeled transcripts into undirected word
//! networks (adjacent words connected, plus similarity edges from a
//! word-embedding table), characterizes each network with topological
//! measurements, and classifies transcripts with cross-validated
//! from-scratch classifiers combined by majority voting.
//!
//! Modules follow the processing order:
//!
//! * [`preprocess`] — tokenization, disfluency and stopword removal,
//!   minimal CHAT parsing
//! * [`embedding`] — word2vec-format tables and cosine similarity
//! * [`network`] — co-occurrence construction and enrichment
//! * [`topology`] — the ten measurements and their aggregation
//! * [`features`] — bag of words, lexical subset, standardization
//! * [`classify`] — G-NB, k-NN, linear/RBF SVM, majority voting
//! * [`eval`] — stratified k-fold harness and threshold sweep
//! * [`corpus`] — dataset manifests, stopword lists, presets
//! * [`pipeline`] — per-transcript orchestration
//! * [`synth`] — synthetic corpora for validation

pub mod classify;
pub mod corpus;
pub mod embedding;
pub mod error;
pub mod eval;
pub mod features;
pub mod network;
pub mod pipeline;
pub mod preprocess;
pub mod synth;
pub mod topology;

pub use classify::{ModelKind, Prediction, TrainedModel};
pub use embedding::EmbeddingTable;
pub use error::{Error, Result};
pub use eval::{EvalConfig, EvalDataset, EvalReport};
pub use features::{FeatureMatrix, FeatureSpace};
pub use network::Network;
pub use pipeline::{PipelineConfig, ProcessedTranscript};
pub use preprocess::{RawTranscript, TokenSequence};
pub use topology::TopoFeatureVector;
