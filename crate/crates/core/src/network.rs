//! Undirected simple word networks: co-occurrence construction and
//! embedding-similarity enrichment.

use std::collections::BTreeSet;
use std::collections::HashMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::embedding::EmbeddingTable;
use crate::error::{Error, Result};
use crate::preprocess::TokenSequence;

/// Provenance of an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EdgeKind {
    Cooccurrence,
    Similarity,
}

impl EdgeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EdgeKind::Cooccurrence => "cooccurrence",
            EdgeKind::Similarity => "similarity",
        }
    }
}

/// An undirected simple graph over the distinct words of one
/// transcript. Nodes are indexed in first-occurrence order; edges are
/// tagged with their provenance. No self-loops, no parallel edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Network {
    words: Vec<String>,
    index: HashMap<String, usize>,
    neighbors: Vec<BTreeSet<usize>>,
    kinds: HashMap<(usize, usize), EdgeKind>,
}

impl Network {
    pub fn new() -> Self {
        Network {
            words: Vec::new(),
            index: HashMap::new(),
            neighbors: Vec::new(),
            kinds: HashMap::new(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.words.len()
    }

    pub fn edge_count(&self) -> usize {
        self.kinds.len()
    }

    pub fn word(&self, node: usize) -> &str {
        &self.words[node]
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn node_of(&self, word: &str) -> Option<usize> {
        self.index.get(word).copied()
    }

    pub fn degree(&self, node: usize) -> usize {
        self.neighbors[node].len()
    }

    /// Neighbor set of a node, in ascending index order.
    pub fn neighbors(&self, node: usize) -> impl Iterator<Item = usize> + '_ {
        self.neighbors[node].iter().copied()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.kinds.contains_key(&canonical(a, b))
    }

    pub fn edge_kind(&self, a: usize, b: usize) -> Option<EdgeKind> {
        self.kinds.get(&canonical(a, b)).copied()
    }

    /// Edges as `(i, j, kind)` with `i < j`, ordered by `(i, j)`.
    pub fn edges(&self) -> Vec<(usize, usize, EdgeKind)> {
        let mut out: Vec<(usize, usize, EdgeKind)> = self
            .kinds
            .iter()
            .map(|(&(a, b), &k)| (a, b, k))
            .collect();
        out.sort_unstable_by_key(|&(a, b, _)| (a, b));
        out
    }

    /// Add a node for `word` if absent; returns its index.
    pub fn add_node(&mut self, word: &str) -> usize {
        if let Some(&i) = self.index.get(word) {
            return i;
        }
        let i = self.words.len();
        self.words.push(word.to_string());
        self.index.insert(word.to_string(), i);
        self.neighbors.push(BTreeSet::new());
        i
    }

    /// Add an untagged-pair edge; self-loops and re-adds are ignored.
    /// The first tag wins: an existing edge is never retagged.
    pub fn add_edge(&mut self, a: usize, b: usize, kind: EdgeKind) -> bool {
        if a == b {
            return false;
        }
        let key = canonical(a, b);
        if self.kinds.contains_key(&key) {
            return false;
        }
        self.kinds.insert(key, kind);
        self.neighbors[a].insert(b);
        self.neighbors[b].insert(a);
        true
    }

    /// Pairs of node indices `(i, j)`, `i < j`, in lexicographic order.
    pub fn node_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.node_count();
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
    }

    /// Write the edge list as `word1<TAB>word2<TAB>kind` lines.
    pub fn write_edge_list<W: Write>(&self, mut w: W) -> Result<()> {
        for (a, b, kind) in self.edges() {
            writeln!(w, "{}\t{}\t{}", self.words[a], self.words[b], kind.as_str())?;
        }
        Ok(())
    }
}

impl Default for Network {
    fn default() -> Self {
        Network::new()
    }
}

fn canonical(a: usize, b: usize) -> (usize, usize) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Build the co-occurrence network of a preprocessed token sequence:
/// one node per distinct word, one edge per adjacent pair of distinct
/// words. When `cross_sentence` is false, pairs spanning a sentence
/// break are skipped.
pub fn build_cooccurrence(seq: &TokenSequence, cross_sentence: bool) -> Result<Network> {
    if seq.tokens.is_empty() {
        return Err(Error::EmptyInput { id: seq.id.clone() });
    }
    let mut net = Network::new();
    for token in &seq.tokens {
        net.add_node(token);
    }
    for i in 0..seq.tokens.len() - 1 {
        if !cross_sentence && seq.is_sentence_boundary(i) {
            continue;
        }
        let a = net.node_of(&seq.tokens[i]).expect("token was added");
        let b = net.node_of(&seq.tokens[i + 1]).expect("token was added");
        if a != b {
            net.add_edge(a, b, EdgeKind::Cooccurrence);
        }
    }
    Ok(net)
}

/// Counters from one enrichment run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnrichmentReport {
    /// Unordered, not-yet-connected node pairs examined.
    pub pairs_considered: usize,
    /// Pairs skipped because a word had no embedding vector.
    pub pairs_skipped_oov: usize,
    /// Similarity edges added.
    pub edges_added: usize,
}

/// Add similarity edges between unconnected node pairs whose embedding
/// cosine similarity is strictly greater than `threshold`.
///
/// Existing edges and their tags are untouched; pairs with an
/// out-of-vocabulary word are skipped and counted.
pub fn enrich(
    net: &Network,
    embeddings: &EmbeddingTable,
    threshold: f64,
) -> (Network, EnrichmentReport) {
    assert!(
        threshold > 0.0 && threshold <= 1.0,
        "threshold must lie in (0, 1]"
    );
    let mut enriched = net.clone();
    let mut report = EnrichmentReport::default();
    for (i, j) in net.node_pairs() {
        if net.has_edge(i, j) {
            continue;
        }
        report.pairs_considered += 1;
        match embeddings.similarity(net.word(i), net.word(j)) {
            Some(sim) if sim > threshold => {
                enriched.add_edge(i, j, EdgeKind::Similarity);
                report.edges_added += 1;
            }
            Some(_) => {}
            None => report.pairs_skipped_oov += 1,
        }
    }
    (enriched, report)
}
