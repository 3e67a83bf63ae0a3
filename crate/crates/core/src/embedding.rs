//! Word-embedding table loading and cosine similarity.
//!
//! Embeddings are consumed, never trained: the loader reads the
//! word2vec text format (`N D` header, then `word v1 … vD` per line),
//! optionally gzip-compressed when the path ends in `.gz`.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use flate2::read::GzDecoder;

use crate::error::{Error, Result};

/// Immutable word → vector map with fixed dimensionality.
#[derive(Debug, Clone)]
pub struct EmbeddingTable {
    dim: usize,
    vectors: HashMap<String, Vec<f32>>,
}

/// Bookkeeping from a table load.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LoadReport {
    /// Entry count declared by the header line.
    pub declared: usize,
    /// Lines parsed into vectors (including overwritten duplicates).
    pub parsed: usize,
    /// Duplicate words; last occurrence wins.
    pub duplicate_count: usize,
}

impl EmbeddingTable {
    pub fn new(dim: usize) -> Self {
        EmbeddingTable {
            dim,
            vectors: HashMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn contains(&self, word: &str) -> bool {
        self.vectors.contains_key(word)
    }

    pub fn vector(&self, word: &str) -> Option<&[f32]> {
        self.vectors.get(word).map(|v| v.as_slice())
    }

    /// Insert a vector, replacing any previous entry for the word.
    pub fn insert(&mut self, word: impl Into<String>, vector: Vec<f32>) -> Result<()> {
        if vector.len() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: vector.len(),
            });
        }
        if vector.iter().any(|v| !v.is_finite()) {
            return Err(Error::Config("embedding vector has non-finite component".into()));
        }
        self.vectors.insert(word.into(), vector);
        Ok(())
    }

    /// Cosine similarity between two words, `None` when either is out
    /// of vocabulary or has a zero-norm vector.
    pub fn similarity(&self, a: &str, b: &str) -> Option<f64> {
        let u = self.vectors.get(a)?;
        let v = self.vectors.get(b)?;
        cosine_similarity_f32(u, v).ok()
    }
}

/// Load a word2vec-format text file (gzip allowed via `.gz` suffix).
pub fn load_embeddings(path: impl AsRef<Path>) -> Result<(EmbeddingTable, LoadReport)> {
    let path = path.as_ref();
    let file = File::open(path)?;
    let display = path.display().to_string();
    if path.extension().is_some_and(|e| e == "gz") {
        parse_embeddings(BufReader::new(GzDecoder::new(file)), &display)
    } else {
        parse_embeddings(BufReader::new(file), &display)
    }
}

/// Parse word2vec text from any reader; `path` is for diagnostics.
pub fn parse_embeddings<R: Read>(reader: BufReader<R>, path: &str) -> Result<(EmbeddingTable, LoadReport)> {
    let format_err = |line: usize, message: String| Error::Format {
        path: path.to_string(),
        line,
        message,
    };

    let mut lines = reader.lines();
    let header = lines
        .next()
        .ok_or_else(|| format_err(1, "empty file".into()))??;
    let mut parts = header.split_whitespace();
    let declared: usize = parts
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| format_err(1, format!("malformed header `{header}`")))?;
    let dim: usize = parts
        .next()
        .and_then(|s| s.parse().ok())
        .filter(|&d| d > 0)
        .ok_or_else(|| format_err(1, format!("malformed header `{header}`")))?;
    if parts.next().is_some() {
        return Err(format_err(1, format!("malformed header `{header}`")));
    }

    let mut table = EmbeddingTable::new(dim);
    let mut report = LoadReport {
        declared,
        ..LoadReport::default()
    };

    for (idx, line) in lines.enumerate() {
        let line_no = idx + 2;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let word = fields.next().expect("non-empty line has a first field");
        let components: Vec<f32> = fields
            .map(|f| {
                f.parse::<f32>()
                    .map_err(|_| format_err(line_no, format!("bad component `{f}`")))
            })
            .collect::<Result<_>>()?;
        if components.len() != dim {
            return Err(format_err(
                line_no,
                format!("expected {dim} components, found {}", components.len()),
            ));
        }
        if components.iter().any(|v| !v.is_finite()) {
            return Err(format_err(line_no, "non-finite component".into()));
        }
        if table.contains(word) {
            report.duplicate_count += 1;
        }
        table.vectors.insert(word.to_string(), components);
        report.parsed += 1;
    }

    Ok((table, report))
}

fn cosine_similarity_f32(u: &[f32], v: &[f32]) -> Result<f64> {
    let u64s: Vec<f64> = u.iter().map(|&x| x as f64).collect();
    let v64s: Vec<f64> = v.iter().map(|&x| x as f64).collect();
    cosine_similarity(&u64s, &v64s)
}

/// Cosine similarity of two equal-length vectors, clamped to [-1, 1].
///
/// A zero-norm vector makes the quantity undefined; callers treat the
/// pair as carrying no similarity information.
pub fn cosine_similarity(u: &[f64], v: &[f64]) -> Result<f64> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    let mut dot = 0.0;
    let mut nu = 0.0;
    let mut nv = 0.0;
    for (a, b) in u.iter().zip(v) {
        dot += a * b;
        nu += a * a;
        nv += b * b;
    }
    if nu == 0.0 || nv == 0.0 {
        return Err(Error::UndefinedSimilarity);
    }
    Ok((dot / (nu.sqrt() * nv.sqrt())).clamp(-1.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::io::Cursor;

    fn parse_str(s: &str) -> Result<(EmbeddingTable, LoadReport)> {
        parse_embeddings(BufReader::new(Cursor::new(s.to_string())), "mem")
    }

    #[test]
    fn loads_minimal_file() {
        let (table, report) = parse_str("2 3\na 1 0 0\nb 0 1 0\n").unwrap();
        assert_eq!(table.dim(), 3);
        assert_eq!(table.len(), 2);
        assert_eq!(report.declared, 2);
        assert_eq!(report.duplicate_count, 0);
        assert_eq!(table.vector("a"), Some(&[1.0, 0.0, 0.0][..]));
    }

    #[test]
    fn arity_mismatch_reports_line_number() {
        let err = parse_str("1 3\na 1 0\n").unwrap_err();
        match err {
            Error::Format { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn duplicates_last_wins() {
        let (table, report) = parse_str("2 2\na 1 0\na 0 1\n").unwrap();
        assert_eq!(table.len(), 1);
        assert_eq!(report.duplicate_count, 1);
        assert_eq!(table.vector("a"), Some(&[0.0, 1.0][..]));
    }

    #[test]
    fn malformed_header_is_rejected() {
        assert!(matches!(parse_str("x y\n").unwrap_err(), Error::Format { line: 1, .. }));
        assert!(matches!(parse_str("3\n").unwrap_err(), Error::Format { line: 1, .. }));
    }

    #[test]
    fn gzip_roundtrip() {
        use flate2::write::GzEncoder;
        use flate2::Compression;
        use std::io::Write;

        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("vecs.txt.gz");
        let mut enc = GzEncoder::new(File::create(&path).unwrap(), Compression::default());
        enc.write_all(b"1 2\nword 0.5 -0.5\n").unwrap();
        enc.finish().unwrap();

        let (table, _) = load_embeddings(&path).unwrap();
        assert_eq!(table.dim(), 2);
        assert_eq!(table.vector("word"), Some(&[0.5, -0.5][..]));
    }

    #[test]
    fn identical_vectors_have_similarity_one() {
        let v = [1.0, 2.0, 3.0];
        assert_relative_eq!(cosine_similarity(&v, &v).unwrap(), 1.0);
    }

    #[test]
    fn orthogonal_vectors_have_similarity_zero() {
        assert_relative_eq!(cosine_similarity(&[1.0, 0.0], &[0.0, 1.0]).unwrap(), 0.0);
    }

    #[test]
    fn known_angle() {
        let s = cosine_similarity(&[1.0, 1.0], &[1.0, 0.0]).unwrap();
        assert_relative_eq!(s, 0.70710678, max_relative = 1e-8);
    }

    #[test]
    fn zero_norm_is_undefined() {
        let err = cosine_similarity(&[0.0, 0.0], &[1.0, 0.0]).unwrap_err();
        assert!(matches!(err, Error::UndefinedSimilarity));
    }

    proptest! {
        #[test]
        fn similarity_is_symmetric(
            u in proptest::collection::vec(-100.0f64..100.0, 4),
            v in proptest::collection::vec(-100.0f64..100.0, 4),
        ) {
            let uv = cosine_similarity(&u, &v);
            let vu = cosine_similarity(&v, &u);
            match (uv, vu) {
                (Ok(a), Ok(b)) => prop_assert_eq!(a, b),
                (Err(_), Err(_)) => {}
                _ => prop_assert!(false, "asymmetric error behavior"),
            }
        }

        #[test]
        fn similarity_is_scale_invariant(
            u in proptest::collection::vec(-100.0f64..100.0, 4),
            v in proptest::collection::vec(-100.0f64..100.0, 4),
            alpha in 0.001f64..1000.0,
        ) {
            let scaled: Vec<f64> = u.iter().map(|x| x * alpha).collect();
            if let (Ok(a), Ok(b)) = (cosine_similarity(&u, &v), cosine_similarity(&scaled, &v)) {
                prop_assert!((a - b).abs() < 1e-12);
            }
        }
    }
}
