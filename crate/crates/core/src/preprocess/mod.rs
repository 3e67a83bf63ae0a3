//! Transcript preprocessing: tokenization, disfluency removal and
//! stopword/punctuation filtering.
//!
//! The stages are pure functions applied in order:
//! [`tokenize`] → [`strip_disfluencies`] → [`remove_stopwords_punct`].
//! Lexical features are computed on the post-disfluency, pre-stopword
//! sequence; network construction consumes the fully filtered one.
//! Lemmatization is deliberately not performed.

mod chat;

pub use chat::{parse_chat, ChatOptions};

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How a raw transcript file was encoded on disk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SourceFormat {
    /// One sentence per line.
    Plain,
    /// CHAT transcription format (minimal subset, see [`parse_chat`]).
    Chat,
}

/// A labeled transcript as read from disk: one subject narrative split
/// into sentences, not yet tokenized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawTranscript {
    pub id: String,
    pub label: String,
    pub sentences: Vec<String>,
    pub source_format: SourceFormat,
}

/// An ordered token sequence for one transcript.
///
/// `sentence_breaks` holds the indices of tokens that start a new
/// sentence (index 0 is never a break). Every break is strictly
/// increasing and `< tokens.len()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenSequence {
    pub id: String,
    pub label: String,
    pub tokens: Vec<String>,
    pub sentence_breaks: Vec<usize>,
}

impl TokenSequence {
    /// Number of sentences represented by the sequence.
    pub fn sentence_count(&self) -> usize {
        if self.tokens.is_empty() {
            0
        } else {
            self.sentence_breaks.len() + 1
        }
    }

    /// True if the adjacent token pair `(i, i + 1)` spans a sentence
    /// boundary.
    pub fn is_sentence_boundary(&self, i: usize) -> bool {
        self.sentence_breaks.binary_search(&(i + 1)).is_ok()
    }
}

/// Filled pauses removed by [`strip_disfluencies`] when no custom
/// lexicon is supplied.
pub const DEFAULT_FILLERS: [&str; 4] = ["uh", "um", "er", "ah"];

/// Default filler lexicon as an owned set.
pub fn default_fillers() -> HashSet<String> {
    DEFAULT_FILLERS.iter().map(|s| s.to_string()).collect()
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric()
}

fn is_apostrophe(c: char) -> bool {
    c == '\'' || c == '\u{2019}'
}

/// Split one sentence into lowercase word and punctuation tokens.
///
/// A word token is a maximal run of alphanumeric characters, allowing
/// internal apostrophes ("water's" stays whole). Every other
/// non-whitespace character becomes its own punctuation token.
fn tokenize_sentence(sentence: &str, out: &mut Vec<String>) {
    let chars: Vec<char> = sentence.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if is_word_char(c) {
            let start = i;
            while i < chars.len() && is_word_char(chars[i]) {
                i += 1;
                // keep an apostrophe only between two word characters
                if i + 1 < chars.len() && is_apostrophe(chars[i]) && is_word_char(chars[i + 1]) {
                    i += 1;
                }
            }
            let token: String = chars[start..i].iter().collect();
            out.push(token.to_lowercase());
        } else {
            out.push(c.to_string());
            i += 1;
        }
    }
}

/// Tokenize a raw transcript into a lowercase token sequence.
///
/// Punctuation marks are emitted as separate tokens so the
/// stopword/punctuation stage can drop them later.
pub fn tokenize(raw: &RawTranscript) -> Result<TokenSequence> {
    let mut tokens = Vec::new();
    let mut breaks = Vec::new();
    for sentence in &raw.sentences {
        let start = tokens.len();
        tokenize_sentence(sentence, &mut tokens);
        if tokens.len() > start && start > 0 {
            breaks.push(start);
        }
    }
    if tokens.is_empty() {
        return Err(Error::EmptyInput { id: raw.id.clone() });
    }
    Ok(TokenSequence {
        id: raw.id.clone(),
        label: raw.label.clone(),
        tokens,
        sentence_breaks: breaks,
    })
}

/// Remap sentence breaks after dropping the tokens where `kept[i]` is
/// false. Merged or emptied sentences collapse to a single break.
fn reindex_breaks(breaks: &[usize], kept: &[bool]) -> Vec<usize> {
    let mut new_index = vec![0usize; kept.len() + 1];
    let mut count = 0;
    for (i, &k) in kept.iter().enumerate() {
        new_index[i] = count;
        if k {
            count += 1;
        }
    }
    new_index[kept.len()] = count;

    let mut out: Vec<usize> = Vec::new();
    for &b in breaks {
        let nb = new_index[b];
        if nb == 0 || nb >= count {
            continue;
        }
        if out.last() != Some(&nb) {
            out.push(nb);
        }
    }
    out
}

fn retain_tokens(seq: &TokenSequence, kept: &[bool]) -> TokenSequence {
    let tokens: Vec<String> = seq
        .tokens
        .iter()
        .zip(kept)
        .filter(|(_, &k)| k)
        .map(|(t, _)| t.clone())
        .collect();
    let sentence_breaks = reindex_breaks(&seq.sentence_breaks, kept);
    TokenSequence {
        id: seq.id.clone(),
        label: seq.label.clone(),
        tokens,
        sentence_breaks,
    }
}

fn char_len(s: &str) -> usize {
    s.chars().count()
}

/// Remove filled pauses, short false starts and immediate single-word
/// repetitions. Idempotent: a second application is a no-op.
///
/// Rules, applied to a fixpoint:
/// * tokens in `filler_lexicon` are dropped;
/// * a token of length ≤ 2 immediately followed by a token having it
///   as a prefix is a false start and is dropped ("t the" → "the");
/// * the second of two identical adjacent tokens is dropped
///   ("the the" → "the"). Multi-word repetitions are kept.
pub fn strip_disfluencies(seq: &TokenSequence, filler_lexicon: &HashSet<String>) -> TokenSequence {
    let mut current = seq.clone();
    loop {
        let kept = disfluency_pass(&current, filler_lexicon);
        if kept.iter().all(|&k| k) {
            return current;
        }
        current = retain_tokens(&current, &kept);
    }
}

fn disfluency_pass(seq: &TokenSequence, fillers: &HashSet<String>) -> Vec<bool> {
    let tokens = &seq.tokens;
    let mut kept = vec![true; tokens.len()];
    for (i, tok) in tokens.iter().enumerate() {
        if fillers.contains(tok.as_str()) {
            kept[i] = false;
            continue;
        }
        if let Some(next) = tokens.get(i + 1) {
            if char_len(tok) <= 2 && next.starts_with(tok.as_str()) {
                kept[i] = false;
                continue;
            }
        }
    }
    // repetition check runs over the survivors of this pass
    let mut prev: Option<usize> = None;
    for i in 0..tokens.len() {
        if !kept[i] {
            continue;
        }
        if let Some(p) = prev {
            if tokens[p] == tokens[i] {
                kept[i] = false;
                continue;
            }
        }
        prev = Some(i);
    }
    kept
}

fn is_punctuation(token: &str) -> bool {
    !token.chars().any(|c| c.is_alphanumeric())
}

/// Drop punctuation-only tokens and stopwords, preserving order and
/// repeated content words.
///
/// Errors with [`Error::EmptyAfterFiltering`] when nothing remains; the
/// caller flags the transcript and excludes it from modeling.
pub fn remove_stopwords_punct(seq: &TokenSequence, stopwords: &HashSet<String>) -> Result<TokenSequence> {
    let kept: Vec<bool> = seq
        .tokens
        .iter()
        .map(|t| !is_punctuation(t) && !stopwords.contains(t.as_str()))
        .collect();
    let out = retain_tokens(seq, &kept);
    if out.tokens.is_empty() {
        return Err(Error::EmptyAfterFiltering { id: seq.id.clone() });
    }
    Ok(out)
}
