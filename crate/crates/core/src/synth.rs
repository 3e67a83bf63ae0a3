//! Synthetic two-class corpora for pipeline validation.
//!
//! Class `control` samples walk a large ring vocabulary in long
//! chains, producing path-like networks with high diameter and near-
//! uniform degree. Class `mci` samples loop over a small disjoint
//! vocabulary around hub words, producing compact, hub-dominated
//! networks with repetitive, low-diversity text. The two vocabularies
//! never overlap, and the companion embedding table places them in
//! orthogonal planes so similarity enrichment stays within a class.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::embedding::EmbeddingTable;
use crate::preprocess::{RawTranscript, SourceFormat};

/// Shape of the generated corpus.
#[derive(Debug, Clone, Copy)]
pub struct SynthConfig {
    pub per_class: usize,
    pub seed: u64,
    /// Ring vocabulary size of the chain class.
    pub chain_vocab: usize,
    /// Vocabulary size of the loop class.
    pub loop_vocab: usize,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            per_class: 40,
            seed: 20_240_401,
            chain_vocab: 30,
            loop_vocab: 8,
        }
    }
}

pub const CHAIN_LABEL: &str = "control";
pub const LOOP_LABEL: &str = "mci";

fn chain_word(i: usize, vocab: usize) -> String {
    format!("alpha{:02}", i % vocab)
}

fn loop_word(i: usize, vocab: usize) -> String {
    format!("beta{:02}", i % vocab)
}

/// Generate `2 * per_class` labeled transcripts.
pub fn generate_corpus(cfg: &SynthConfig) -> Vec<RawTranscript> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = Vec::with_capacity(cfg.per_class * 2);

    for t in 0..cfg.per_class {
        let sentences = (0..rng.gen_range(6..=9))
            .map(|_| {
                let start: usize = rng.gen_range(0..cfg.chain_vocab);
                let len: usize = rng.gen_range(8..=13);
                (0..len)
                    .map(|j| chain_word(start + j, cfg.chain_vocab))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        out.push(RawTranscript {
            id: format!("ctl{t:02}"),
            label: CHAIN_LABEL.to_string(),
            sentences,
            source_format: SourceFormat::Plain,
        });
    }

    for t in 0..cfg.per_class {
        let hub: usize = rng.gen_range(0..cfg.loop_vocab);
        let sentences = (0..rng.gen_range(6..=9))
            .map(|_| {
                let mut words = Vec::new();
                if rng.gen_bool(0.6) {
                    // hub-and-spoke repetition
                    for _ in 0..rng.gen_range(4..=6) {
                        words.push(loop_word(hub, cfg.loop_vocab));
                        words.push(loop_word(rng.gen_range(0..cfg.loop_vocab), cfg.loop_vocab));
                    }
                } else {
                    // short loop retold over and over
                    let a: usize = rng.gen_range(0..cfg.loop_vocab);
                    for r in 0..rng.gen_range(3..=4) {
                        let _ = r;
                        words.push(loop_word(a, cfg.loop_vocab));
                        words.push(loop_word(a + 1, cfg.loop_vocab));
                        words.push(loop_word(a + 2, cfg.loop_vocab));
                    }
                }
                words.join(" ")
            })
            .collect();
        out.push(RawTranscript {
            id: format!("mci{t:02}"),
            label: LOOP_LABEL.to_string(),
            sentences,
            source_format: SourceFormat::Plain,
        });
    }

    out
}

/// Embeddings for the synthetic vocabulary: chain words sit on a ring
/// in one plane (neighbors similar, far words dissimilar), loop words
/// cluster tightly in an orthogonal plane.
pub fn generate_embeddings(cfg: &SynthConfig) -> EmbeddingTable {
    let mut table = EmbeddingTable::new(4);
    let step = std::f32::consts::TAU / cfg.chain_vocab as f32;
    for i in 0..cfg.chain_vocab {
        let angle = i as f32 * step;
        table
            .insert(chain_word(i, cfg.chain_vocab), vec![angle.cos(), angle.sin(), 0.0, 0.0])
            .expect("dimension fixed");
    }
    // tight cluster: ±9° around the base direction of the second plane
    let spread = std::f32::consts::TAU / 40.0;
    for i in 0..cfg.loop_vocab {
        let angle = (i as f32 / cfg.loop_vocab.max(1) as f32 - 0.5) * spread;
        table
            .insert(loop_word(i, cfg.loop_vocab), vec![0.0, 0.0, angle.cos(), angle.sin()])
            .expect("dimension fixed");
    }
    table
}
