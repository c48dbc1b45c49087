//! Vocabulary construction, document-bounded co-occurrence counting and the
//! PPMI transform.

use std::borrow::Borrow;
use std::io::Write;

use rustc_hash::{FxHashMap, FxHashSet};

use crate::corpus::Document;
use crate::error::{Error, Result};
use crate::sparse::CsrMatrix;

/// Retained words with dense, lexicographically ordered indices.
#[derive(Debug, Clone, PartialEq)]
pub struct Vocabulary {
    words: Vec<String>,
    index: FxHashMap<String, u32>,
    counts: Vec<u64>,
    doc_freq: Vec<f64>,
    n_docs: u64,
}

impl Vocabulary {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn word(&self, i: usize) -> &str {
        &self.words[i]
    }

    pub fn index_of(&self, word: &str) -> Option<usize> {
        self.index.get(word).map(|&i| i as usize)
    }

    pub fn count(&self, i: usize) -> u64 {
        self.counts[i]
    }

    /// Fraction of documents containing word `i`.
    pub fn doc_freq(&self, i: usize) -> f64 {
        self.doc_freq[i]
    }

    /// Number of documents the statistics were collected over.
    pub fn n_docs(&self) -> u64 {
        self.n_docs
    }
}

/// Accumulates word and document counts; shards merge associatively.
#[derive(Debug, Default, Clone)]
pub struct VocabularyBuilder {
    stats: FxHashMap<String, (u64, u64)>,
    n_docs: u64,
}

impl VocabularyBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_document(&mut self, tokens: &[String]) {
        self.n_docs += 1;
        let mut seen: FxHashSet<&str> = FxHashSet::default();
        for t in tokens {
            let first = seen.insert(t.as_str());
            match self.stats.get_mut(t.as_str()) {
                Some(entry) => {
                    entry.0 += 1;
                    entry.1 += first as u64;
                }
                None => {
                    self.stats.insert(t.clone(), (1, 1));
                }
            }
        }
    }

    pub fn merge(&mut self, other: VocabularyBuilder) {
        self.n_docs += other.n_docs;
        for (w, (c, d)) in other.stats {
            let e = self.stats.entry(w).or_insert((0, 0));
            e.0 += c;
            e.1 += d;
        }
    }

    pub fn n_docs(&self) -> u64 {
        self.n_docs
    }

    /// Number of distinct tokens seen so far.
    pub fn distinct(&self) -> usize {
        self.stats.len()
    }

    /// Keeps words with `count >= min_count` and document frequency
    /// `<= max_doc_frac`.
    pub fn finish(self, min_count: u64, max_doc_frac: f64) -> Result<Vocabulary> {
        validate_thresholds(min_count, max_doc_frac)?;
        let n_docs = self.n_docs;
        let mut kept: Vec<(String, u64, f64)> = self
            .stats
            .into_iter()
            .filter_map(|(w, (count, docs))| {
                let df = docs as f64 / n_docs as f64;
                (count >= min_count && df <= max_doc_frac).then_some((w, count, df))
            })
            .collect();
        if kept.is_empty() {
            return Err(Error::EmptyVocabulary {
                min_count,
                max_doc_frac,
            });
        }
        kept.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        let mut vocab = Vocabulary {
            words: Vec::with_capacity(kept.len()),
            index: FxHashMap::default(),
            counts: Vec::with_capacity(kept.len()),
            doc_freq: Vec::with_capacity(kept.len()),
            n_docs,
        };
        for (i, (w, c, df)) in kept.into_iter().enumerate() {
            vocab.index.insert(w.clone(), i as u32);
            vocab.words.push(w);
            vocab.counts.push(c);
            vocab.doc_freq.push(df);
        }
        Ok(vocab)
    }
}

fn validate_thresholds(min_count: u64, max_doc_frac: f64) -> Result<()> {
    if min_count < 1 {
        return Err(Error::InvalidParameter("min_count must be >= 1".into()));
    }
    if !(max_doc_frac > 0.0 && max_doc_frac <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "max_doc_frac must lie in (0, 1], got {max_doc_frac}"
        )));
    }
    Ok(())
}

pub fn build_vocabulary<I, D>(docs: I, min_count: u64, max_doc_frac: f64) -> Result<Vocabulary>
where
    I: IntoIterator<Item = D>,
    D: Borrow<Document>,
{
    validate_thresholds(min_count, max_doc_frac)?;
    let mut builder = VocabularyBuilder::new();
    for d in docs {
        builder.add_document(&d.borrow().tokens);
    }
    builder.finish(min_count, max_doc_frac)
}

/// Which token pairs inside a document count as co-occurring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CooccurrenceMode {
    WholeDocument,
    /// Only positions at most this far apart.
    Window(usize),
}

impl CooccurrenceMode {
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "document" || s == "whole-document" {
            return Ok(Self::WholeDocument);
        }
        if let Some(w) = s.strip_prefix("window:").or_else(|| s.strip_prefix("window")) {
            let w = w.trim_start_matches([':', '(']).trim_end_matches(')');
            let w = if w.is_empty() { 4 } else {
                w.parse::<usize>()
                    .map_err(|_| Error::Config(format!("bad window size in {s:?}")))?
            };
            if w == 0 {
                return Err(Error::Config("window size must be >= 1".into()));
            }
            return Ok(Self::Window(w));
        }
        Err(Error::Config(format!(
            "unknown co-occurrence mode {s:?} (expected document or window:W)"
        )))
    }
}

impl std::fmt::Display for CooccurrenceMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::WholeDocument => f.write_str("document"),
            Self::Window(w) => write!(f, "window:{w}"),
        }
    }
}

#[inline]
fn pair_key(a: u32, b: u32) -> u64 {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    ((lo as u64) << 32) | hi as u64
}

/// Unordered pair counts for one shard of documents.
#[derive(Debug, Clone)]
pub struct CooccurrenceCounter {
    n: usize,
    mode: CooccurrenceMode,
    pairs: FxHashMap<u64, u64>,
    ids: Vec<Option<u32>>,
}

impl CooccurrenceCounter {
    pub fn new(vocab_len: usize, mode: CooccurrenceMode) -> Self {
        Self {
            n: vocab_len,
            mode,
            pairs: FxHashMap::default(),
            ids: Vec::new(),
        }
    }

    pub fn add_document(&mut self, vocab: &Vocabulary, tokens: &[String]) {
        let mut ids = std::mem::take(&mut self.ids);
        ids.clear();
        ids.extend(tokens.iter().map(|t| vocab.index.get(t.as_str()).copied()));
        self.add_ids(&ids);
        self.ids = ids;
    }

    /// Counts pairs over token positions; `None` marks an out-of-vocabulary
    /// position, which still occupies its slot for window distances.
    pub fn add_ids(&mut self, ids: &[Option<u32>]) {
        let reach = match self.mode {
            CooccurrenceMode::WholeDocument => usize::MAX,
            CooccurrenceMode::Window(w) => w,
        };
        for (p, a) in ids.iter().enumerate() {
            let Some(a) = *a else { continue };
            let end = ids.len().min(p.saturating_add(reach).saturating_add(1));
            for b in ids[p + 1..end].iter().flatten() {
                if *b != a {
                    *self.pairs.entry(pair_key(a, *b)).or_insert(0) += 1;
                }
            }
        }
    }

    pub fn merge(&mut self, other: CooccurrenceCounter) {
        let (mut big, small) = if self.pairs.len() >= other.pairs.len() {
            (std::mem::take(&mut self.pairs), other.pairs)
        } else {
            (other.pairs, std::mem::take(&mut self.pairs))
        };
        for (k, v) in small {
            *big.entry(k).or_insert(0) += v;
        }
        self.pairs = big;
    }

    pub fn distinct_pairs(&self) -> usize {
        self.pairs.len()
    }

    pub fn finish(self) -> CooccurrenceMatrix {
        let mut triplets: Vec<(u32, u32, u64)> = Vec::with_capacity(self.pairs.len() * 2);
        for (k, v) in self.pairs {
            let (a, b) = ((k >> 32) as u32, k as u32);
            triplets.push((a, b, v));
            triplets.push((b, a, v));
        }
        drop(self.ids);
        triplets.sort_unstable_by_key(|t| (t.0, t.1));
        CooccurrenceMatrix {
            counts: CsrMatrix::from_sorted_triplets(self.n, self.n, &triplets),
        }
    }
}

/// Symmetric pair counts with a zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct CooccurrenceMatrix {
    counts: CsrMatrix<u64>,
}

impl CooccurrenceMatrix {
    pub fn dim(&self) -> usize {
        self.counts.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.counts.get(i, j).unwrap_or(0)
    }

    pub fn counts(&self) -> &CsrMatrix<u64> {
        &self.counts
    }

    pub fn row_sums(&self) -> Vec<u64> {
        (0..self.dim())
            .map(|i| self.counts.row(i).1.iter().sum())
            .collect()
    }

    /// Number of unordered co-occurring pairs counted.
    pub fn total_pairs(&self) -> u64 {
        self.counts.iter().map(|(_, _, v)| v).sum::<u64>() / 2
    }
}

pub fn count_cooccurrences<I, D>(docs: I, vocab: &Vocabulary, mode: CooccurrenceMode) -> CooccurrenceMatrix
where
    I: IntoIterator<Item = D>,
    D: Borrow<Document>,
{
    let mut counter = CooccurrenceCounter::new(vocab.len(), mode);
    for d in docs {
        counter.add_document(vocab, &d.borrow().tokens);
    }
    counter.finish()
}

/// Positive pointwise mutual information over a co-occurrence matrix.
///
/// Probabilities are taken over the multiset of unordered co-occurring pairs:
/// the joint probability of `{w, c}` is its pair count over the number of
/// pairs `N`, and the marginal of `w` is its share of the `2N` pair endpoints
/// (its row sum over `2N`). Entries are `max(0, ln(p(w,c) / (p(w) p(c))))`;
/// pairs that never co-occur stay structurally zero.
#[derive(Debug, Clone, PartialEq)]
pub struct PpmiMatrix {
    matrix: CsrMatrix<f64>,
}

impl PpmiMatrix {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.matrix.get(i, j).unwrap_or(0.0)
    }

    pub fn nnz(&self) -> usize {
        self.matrix.nnz()
    }

    pub fn as_csr(&self) -> &CsrMatrix<f64> {
        &self.matrix
    }

    pub fn from_csr(matrix: CsrMatrix<f64>) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::DimensionMismatch {
                left: matrix.nrows(),
                right: matrix.ncols(),
            });
        }
        if matrix.iter().any(|(_, _, v)| !(v >= 0.0) || !v.is_finite()) {
            return Err(Error::InvalidParameter(
                "PPMI entries must be finite and non-negative".into(),
            ));
        }
        Ok(Self { matrix })
    }

    /// Writes `row_word<TAB>col_word<TAB>value` lines.
    pub fn write_tsv<W: Write>(&self, vocab: &Vocabulary, mut out: W) -> std::io::Result<()> {
        for (i, j, v) in self.matrix.iter() {
            writeln!(out, "{}\t{}\t{}", vocab.word(i), vocab.word(j), v)?;
        }
        Ok(())
    }
}

pub fn ppmi(counts: &CooccurrenceMatrix) -> Result<PpmiMatrix> {
    ppmi_smoothed(counts, 1.0)
}

/// As [`ppmi`], with marginals raised to `alpha` and renormalised
/// (context-distribution smoothing). `alpha = 1` is the unsmoothed transform.
pub fn ppmi_smoothed(counts: &CooccurrenceMatrix, alpha: f64) -> Result<PpmiMatrix> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "smoothing exponent must lie in (0, 1], got {alpha}"
        )));
    }
    let row_sums = counts.row_sums();
    let endpoints: u64 = row_sums.iter().sum();
    if endpoints == 0 {
        return Err(Error::EmptyCooccurrence);
    }
    let ln_pairs = (endpoints as f64 / 2.0).ln();
    let ln_marginal: Vec<f64> = if alpha == 1.0 {
        let ln_total = (endpoints as f64).ln();
        row_sums
            .iter()
            .map(|&r| if r > 0 { (r as f64).ln() - ln_total } else { f64::NEG_INFINITY })
            .collect()
    } else {
        let z: f64 = row_sums.iter().map(|&r| (r as f64).powf(alpha)).sum();
        row_sums
            .iter()
            .map(|&r| if r > 0 { alpha * (r as f64).ln() - z.ln() } else { f64::NEG_INFINITY })
            .collect()
    };

    let n = counts.dim();
    let rows = (0..n)
        .map(|i| {
            let (cols, vals) = counts.counts.row(i);
            cols.iter()
                .zip(vals)
                .filter_map(|(&j, &c)| {
                    let v = (c as f64).ln() - ln_pairs - ln_marginal[i] - ln_marginal[j as usize];
                    (v > 0.0).then_some((j, v))
                })
                .collect()
        })
        .collect();
    Ok(PpmiMatrix {
        matrix: CsrMatrix::from_rows(n, rows),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(tokens: &[&str]) -> Document {
        Document {
            id: 0,
            raw: tokens.join(" "),
            tokens: tokens.iter().map(|s| s.to_string()).collect(),
        }
    }

    #[test]
    fn min_count_excludes_rare_words() {
        let mut docs: Vec<Document> = (0..15).map(|_| doc(&["rare", "x"])).collect();
        docs.extend((0..100).map(|_| doc(&["y"])));
        let v = build_vocabulary(&docs, 16, 1.0).unwrap();
        assert!(v.index_of("rare").is_none());
        assert!(v.index_of("y").is_some());
    }

    #[test]
    fn doc_frequency_cap() {
        let mut docs: Vec<Document> = (0..9).map(|_| doc(&["common", "a"])).collect();
        docs.push(doc(&["b", "b"]));
        let v = build_vocabulary(&docs, 1, 0.3).unwrap();
        assert!(v.index_of("common").is_none());
        assert_eq!(v.words(), ["b"]);
        assert_eq!(v.count(0), 2);
        assert!((v.doc_freq(0) - 0.1).abs() < 1e-15);
    }

    #[test]
    fn empty_vocabulary_is_an_error() {
        let docs = vec![doc(&["a"])];
        assert!(matches!(
            build_vocabulary(&docs, 5, 1.0),
            Err(Error::EmptyVocabulary { .. })
        ));
        assert!(build_vocabulary(&docs, 0, 1.0).is_err());
        assert!(build_vocabulary(&docs, 1, 0.0).is_err());
    }

    #[test]
    fn small_corpus_counts() {
        let docs = vec![doc(&["a", "b"]), doc(&["a", "b"]), doc(&["a", "c"])];
        let v = build_vocabulary(&docs, 1, 1.0).unwrap();
        let m = count_cooccurrences(&docs, &v, CooccurrenceMode::WholeDocument);
        let (a, b, c) = (0, 1, 2);
        assert_eq!(m.get(a, b), 2);
        assert_eq!(m.get(b, a), 2);
        assert_eq!(m.get(a, c), 1);
        assert_eq!(m.get(b, c), 0);
        assert_eq!(m.total_pairs(), 3);

        let p = ppmi(&m).unwrap();
        assert!((p.get(a, b) - 4f64.ln()).abs() < 1e-12);
        assert!((p.get(a, c) - 4f64.ln()).abs() < 1e-12);
        assert_eq!(p.get(b, c), 0.0);
    }

    #[test]
    fn repeated_word_counts_each_position() {
        let docs = vec![doc(&["a", "a", "b"])];
        let v = build_vocabulary(&docs, 1, 1.0).unwrap();
        let m = count_cooccurrences(&docs, &v, CooccurrenceMode::WholeDocument);
        assert_eq!(m.get(0, 1), 2);
        assert_eq!(m.get(0, 0), 0);
    }

    #[test]
    fn document_boundaries_are_respected() {
        let docs = vec![doc(&["love", "bts"]), doc(&["hate", "critics"])];
        let v = build_vocabulary(&docs, 1, 1.0).unwrap();
        let m = count_cooccurrences(&docs, &v, CooccurrenceMode::WholeDocument);
        let (h, b) = (v.index_of("hate").unwrap(), v.index_of("bts").unwrap());
        assert_eq!(m.get(h, b), 0);
    }

    #[test]
    fn window_mode_limits_distance() {
        let docs = vec![doc(&["a", "x", "y", "b"])];
        let v = build_vocabulary(&docs, 1, 1.0).unwrap();
        let (a, b) = (v.index_of("a").unwrap(), v.index_of("b").unwrap());
        let near = count_cooccurrences(&docs, &v, CooccurrenceMode::Window(2));
        assert_eq!(near.get(a, b), 0);
        let far = count_cooccurrences(&docs, &v, CooccurrenceMode::Window(3));
        assert_eq!(far.get(a, b), 1);
    }

    #[test]
    fn all_zero_counts_rejected() {
        let docs = vec![doc(&["a"]), doc(&["b"])];
        let v = build_vocabulary(&docs, 1, 1.0).unwrap();
        let m = count_cooccurrences(&docs, &v, CooccurrenceMode::WholeDocument);
        assert!(matches!(ppmi(&m), Err(Error::EmptyCooccurrence)));
    }

    #[test]
    fn mode_parsing() {
        assert_eq!(CooccurrenceMode::parse("document").unwrap(), CooccurrenceMode::WholeDocument);
        assert_eq!(CooccurrenceMode::parse("window:7").unwrap(), CooccurrenceMode::Window(7));
        assert_eq!(CooccurrenceMode::parse("window").unwrap(), CooccurrenceMode::Window(4));
        assert!(CooccurrenceMode::parse("window:0").is_err());
        assert!(CooccurrenceMode::parse("sliding").is_err());
        let m = CooccurrenceMode::Window(3);
        assert_eq!(CooccurrenceMode::parse(&m.to_string()).unwrap(), m);
    }
}
