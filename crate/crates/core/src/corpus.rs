//! Dataset ingestion: manifest-driven transcript loading, stopword
//! files and dataset presets.
//!
//! A dataset is a directory holding a `labels.csv` manifest with the
//! header `id,label,path` plus the referenced transcript files:
//! `.txt` (one sentence per line) or `.cha` (CHAT, minimal subset).
//! Paths are resolved relative to the manifest's directory.

use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::preprocess::{parse_chat, ChatOptions, RawTranscript, SourceFormat};

/// Reference stopword list for English.
pub const ENGLISH_STOPWORDS: &str = include_str!("../data/stopwords/english.txt");

/// Reference stopword list for Portuguese.
pub const PORTUGUESE_STOPWORDS: &str = include_str!("../data/stopwords/portuguese.txt");

/// Parse a stopword list: one token per line, UTF-8, `#` comments and
/// blank lines ignored.
pub fn parse_stopwords(text: &str) -> HashSet<String> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.to_lowercase())
        .collect()
}

/// Load a stopword file from disk.
pub fn load_stopwords(path: impl AsRef<Path>) -> Result<HashSet<String>> {
    Ok(parse_stopwords(&fs::read_to_string(path)?))
}

/// Built-in reference list for a language tag ("en" or "pt").
pub fn builtin_stopwords(language: &str) -> Result<HashSet<String>> {
    match language.to_ascii_lowercase().as_str() {
        "en" | "eng" | "english" => Ok(parse_stopwords(ENGLISH_STOPWORDS)),
        "pt" | "por" | "portuguese" => Ok(parse_stopwords(PORTUGUESE_STOPWORDS)),
        other => Err(Error::Config(format!(
            "no built-in stopword list for language `{other}`"
        ))),
    }
}

/// One manifest row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestEntry {
    pub id: String,
    pub label: String,
    pub path: PathBuf,
}

/// Read a `labels.csv` manifest (header `id,label,path`).
pub fn read_manifest(path: impl AsRef<Path>) -> Result<Vec<ManifestEntry>> {
    let path = path.as_ref();
    let display = path.display().to_string();
    let mut reader = csv::Reader::from_path(path)?;
    {
        let headers = reader.headers()?;
        let expected = ["id", "label", "path"];
        let got: Vec<&str> = headers.iter().collect();
        if got != expected {
            return Err(Error::Format {
                path: display,
                line: 1,
                message: format!("manifest header must be `id,label,path`, found `{}`", got.join(",")),
            });
        }
    }
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    let mut entries = Vec::new();
    let mut seen_ids = HashSet::new();
    for (idx, record) in reader.records().enumerate() {
        let record = record?;
        let line = idx + 2;
        let id = record.get(0).unwrap_or("").trim().to_string();
        let label = record.get(1).unwrap_or("").trim().to_lowercase();
        let rel = record.get(2).unwrap_or("").trim();
        if id.is_empty() || label.is_empty() || rel.is_empty() {
            return Err(Error::Format {
                path: display,
                line,
                message: "id, label and path must all be non-empty".into(),
            });
        }
        if !seen_ids.insert(id.clone()) {
            return Err(Error::Format {
                path: display,
                line,
                message: format!("duplicate transcript id `{id}`"),
            });
        }
        entries.push(ManifestEntry {
            id,
            label,
            path: base.join(rel),
        });
    }
    if entries.is_empty() {
        return Err(Error::Format {
            path: display,
            line: 1,
            message: "manifest lists no transcripts".into(),
        });
    }
    Ok(entries)
}

/// Load one transcript file according to its extension.
pub fn load_transcript(entry: &ManifestEntry, chat: &ChatOptions) -> Result<RawTranscript> {
    let bytes = fs::read(&entry.path).map_err(|e| Error::Format {
        path: entry.path.display().to_string(),
        line: 0,
        message: format!("cannot read transcript: {e}"),
    })?;
    let is_chat = entry
        .path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("cha"));
    if is_chat {
        parse_chat(
            &bytes,
            &entry.path.display().to_string(),
            &entry.id,
            &entry.label,
            chat,
        )
    } else {
        let text = String::from_utf8(bytes).map_err(|e| Error::Format {
            path: entry.path.display().to_string(),
            line: 0,
            message: format!("not valid UTF-8: {e}"),
        })?;
        let sentences: Vec<String> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| l.to_string())
            .collect();
        if sentences.is_empty() {
            return Err(Error::EmptyInput {
                id: entry.id.clone(),
            });
        }
        Ok(RawTranscript {
            id: entry.id.clone(),
            label: entry.label.clone(),
            sentences,
            source_format: SourceFormat::Plain,
        })
    }
}

/// Load a whole dataset from its manifest.
pub fn load_dataset(manifest: impl AsRef<Path>, chat: &ChatOptions) -> Result<Vec<RawTranscript>> {
    let entries = read_manifest(manifest)?;
    entries.iter().map(|e| load_transcript(e, chat)).collect()
}

/// Bundled defaults for the datasets studied with this pipeline. The
/// data itself is access-restricted and user-supplied.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DatasetPreset {
    pub name: &'static str,
    pub language: &'static str,
    /// Enrichment threshold found best for the dataset.
    pub threshold: f64,
    /// Published reference accuracies (percent) for headline cells,
    /// as (classifier, feature space, accuracy).
    pub reference_accuracy: &'static [(&'static str, &'static str, u32)],
}

/// Presets: `cookie-theft`, `cinderella`, `abcd`.
pub const DATASET_PRESETS: [DatasetPreset; 3] = [
    DatasetPreset {
        name: "cookie-theft",
        language: "en",
        threshold: 0.7,
        reference_accuracy: &[
            ("svm-rbf", "cne", 62),
            ("svm-rbf", "cne-lm-bow", 65),
            ("knn", "cn", 59),
            ("svm-rbf", "bow", 60),
        ],
    },
    DatasetPreset {
        name: "cinderella",
        language: "pt",
        threshold: 0.4,
        reference_accuracy: &[
            ("svm-rbf", "cne", 65),
            ("svm-rbf", "cn", 57),
            ("gnb", "bow", 55),
        ],
    },
    DatasetPreset {
        name: "abcd",
        language: "pt",
        threshold: 0.4,
        reference_accuracy: &[
            ("svm-linear", "bow", 75),
            ("svm-linear", "cne", 69),
            ("gnb", "cn", 61),
        ],
    },
];

pub fn preset(name: &str) -> Result<&'static DatasetPreset> {
    DATASET_PRESETS
        .iter()
        .find(|p| p.name == name)
        .ok_or_else(|| {
            let names: Vec<&str> = DATASET_PRESETS.iter().map(|p| p.name).collect();
            Error::Config(format!(
                "unknown dataset preset `{name}` (available: {})",
                names.join(", ")
            ))
        })
}
