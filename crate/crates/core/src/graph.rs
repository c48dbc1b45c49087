//! Weighted k-nearest-neighbour graph over word vectors.

use std::cmp::Ordering;
use std::io::Write;

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::cooccur::Vocabulary;
use crate::embed::EmbeddingMatrix;
use crate::error::{Error, Result};
use crate::sparse::CsrMatrix;

/// Cosine of the angle between `u` and `v`; 0 when either is the zero vector.
pub fn cosine_similarity(u: &[f64], v: &[f64]) -> Result<f64> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    let (mut dot, mut nu, mut nv) = (0.0, 0.0, 0.0);
    for (a, b) in u.iter().zip(v) {
        dot += a * b;
        nu += a * a;
        nv += b * b;
    }
    if nu == 0.0 || nv == 0.0 {
        return Ok(0.0);
    }
    Ok((dot / (nu.sqrt() * nv.sqrt())).clamp(-1.0, 1.0))
}

/// Undirected k-NN graph. Node `i` is `words()[i]`; edge weights are clipped
/// cosine similarities in `[0, 1]`.
#[derive(Debug, Clone)]
pub struct LexicalGraph {
    words: Vec<String>,
    index: FxHashMap<String, usize>,
    vocab_index: Vec<usize>,
    /// Each node's chosen neighbours before symmetrisation, best first.
    neighbours: Vec<Vec<(u32, f64)>>,
    /// Symmetric union of the neighbour lists, zero-weight edges dropped.
    adjacency: CsrMatrix<f64>,
}

impl LexicalGraph {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn node_of(&self, word: &str) -> Option<usize> {
        self.index.get(word).copied()
    }

    /// Vocabulary index of node `i`.
    pub fn vocab_index(&self, i: usize) -> usize {
        self.vocab_index[i]
    }

    pub fn neighbours(&self, i: usize) -> &[(u32, f64)] {
        &self.neighbours[i]
    }

    pub fn adjacency(&self) -> &CsrMatrix<f64> {
        &self.adjacency
    }

    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.adjacency.get(i, j).unwrap_or(0.0)
    }

    /// Builds a graph directly from named vectors. Ties between equally
    /// similar candidates go to the lower node index.
    pub fn from_vectors(words: Vec<String>, vectors: &[Vec<f64>], k: usize) -> Result<Self> {
        let vocab_index = (0..words.len()).collect();
        let refs: Vec<&[f64]> = vectors.iter().map(Vec::as_slice).collect();
        build(words, vocab_index, &refs, k)
    }

    /// Writes `word_a<TAB>word_b<TAB>weight`, one line per undirected edge.
    pub fn write_edges_tsv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for (i, j, w) in self.adjacency.iter() {
            if i < j {
                writeln!(out, "{}\t{}\t{}", self.words[i], self.words[j], w)?;
            }
        }
        Ok(())
    }
}

fn normalized(v: &[f64]) -> Vec<f64> {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm == 0.0 {
        vec![0.0; v.len()]
    } else {
        v.iter().map(|x| x / norm).collect()
    }
}

fn by_similarity(a: &(f64, u32), b: &(f64, u32)) -> Ordering {
    b.0.total_cmp(&a.0).then(a.1.cmp(&b.1))
}

fn build(words: Vec<String>, vocab_index: Vec<usize>, vectors: &[&[f64]], k: usize) -> Result<LexicalGraph> {
    let n = words.len();
    if k == 0 {
        return Err(Error::InvalidParameter("neighbour count K must be >= 1".into()));
    }
    if n < k + 1 {
        return Err(Error::InvalidParameter(format!(
            "graph needs at least K+1 = {} nodes, only {n} available",
            k + 1
        )));
    }
    let dim = vectors.first().map_or(0, |v| v.len());
    if let Some(bad) = vectors.iter().find(|v| v.len() != dim) {
        return Err(Error::DimensionMismatch {
            left: dim,
            right: bad.len(),
        });
    }
    let unit: Vec<Vec<f64>> = vectors.iter().map(|v| normalized(v)).collect();

    let neighbours: Vec<Vec<(u32, f64)>> = (0..n)
        .into_par_iter()
        .map_init(
            || Vec::with_capacity(n),
            |cands: &mut Vec<(f64, u32)>, i| {
                let ui = &unit[i];
                cands.clear();
                cands.extend((0..n).filter(|&j| j != i).map(|j| {
                    let dot: f64 = ui.iter().zip(&unit[j]).map(|(a, b)| a * b).sum();
                    (dot.clamp(-1.0, 1.0), j as u32)
                }));
                if cands.len() > k {
                    cands.select_nth_unstable_by(k - 1, by_similarity);
                    cands.truncate(k);
                }
                cands.sort_unstable_by(by_similarity);
                // A fresh vector: collecting in place would keep the scratch
                // buffer's full capacity alive for every node.
                let mut out = Vec::with_capacity(cands.len());
                out.extend(cands.iter().map(|&(s, j)| (j, s.max(0.0))));
                out
            },
        )
        .collect();

    let mut rows: Vec<Vec<(u32, f64)>> = vec![Vec::new(); n];
    for (i, list) in neighbours.iter().enumerate() {
        for &(j, w) in list {
            if w > 0.0 {
                rows[i].push((j, w));
                rows[j as usize].push((i as u32, w));
            }
        }
    }
    for row in &mut rows {
        row.sort_unstable_by_key(|e| e.0);
        row.dedup_by_key(|e| e.0);
    }

    let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
    Ok(LexicalGraph {
        words,
        index,
        vocab_index,
        neighbours,
        adjacency: CsrMatrix::from_rows(n, rows),
    })
}

/// Links each vocabulary word with document frequency `<= max_doc_frac` to
/// its `k` most cosine-similar peers.
pub fn knn_graph(emb: &EmbeddingMatrix, vocab: &Vocabulary, k: usize, max_doc_frac: f64) -> Result<LexicalGraph> {
    if emb.rows() != vocab.len() {
        return Err(Error::DimensionMismatch {
            left: emb.rows(),
            right: vocab.len(),
        });
    }
    if !(max_doc_frac > 0.0 && max_doc_frac <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "graph max_doc_frac must lie in (0, 1], got {max_doc_frac}"
        )));
    }
    let nodes: Vec<usize> = (0..vocab.len())
        .filter(|&i| vocab.doc_freq(i) <= max_doc_frac)
        .collect();
    let words = nodes.iter().map(|&i| vocab.word(i).to_string()).collect();
    let vectors: Vec<&[f64]> = nodes.iter().map(|&i| emb.row(i)).collect();
    build(words, nodes, &vectors, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cosine_basics() {
        let u = [1.0, 2.0, -0.5];
        assert!((cosine_similarity(&u, &u).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(cosine_similarity(&[1.0, 0.0], &[0.0, 1.0]).unwrap(), 0.0);
        let neg: Vec<f64> = u.iter().map(|x| -x).collect();
        assert!((cosine_similarity(&u, &neg).unwrap() + 1.0).abs() < 1e-12);
        assert_eq!(cosine_similarity(&[0.0, 0.0], &[1.0, 1.0]).unwrap(), 0.0);
        assert!(cosine_similarity(&[1.0], &[1.0, 2.0]).is_err());
    }

    fn words(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("w{i}")).collect()
    }

    #[test]
    fn identical_vectors_form_a_triangle() {
        let v = vec![vec![0.3, 0.4]; 3];
        let g = LexicalGraph::from_vectors(words(3), &v, 2).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert!((g.weight(i, j) - 1.0).abs() < 1e-12);
                }
            }
            assert_eq!(g.weight(i, i), 0.0);
        }
    }

    #[test]
    fn orthogonal_vectors_get_zero_weight_edges() {
        let v = vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]];
        let g = LexicalGraph::from_vectors(words(3), &v, 2).unwrap();
        for i in 0..3 {
            assert_eq!(g.neighbours(i).len(), 2);
            assert!(g.neighbours(i).iter().all(|&(_, w)| w == 0.0));
        }
        assert_eq!(g.adjacency().nnz(), 0);
    }

    #[test]
    fn negative_similarity_is_clipped() {
        let v = vec![vec![1.0, 0.0], vec![-1.0, 0.1], vec![0.9, 0.1]];
        let g = LexicalGraph::from_vectors(words(3), &v, 2).unwrap();
        assert_eq!(g.weight(0, 1), 0.0);
        assert!(g.weight(0, 2) > 0.9);
    }

    #[test]
    fn too_few_nodes() {
        let v = vec![vec![1.0], vec![2.0]];
        assert!(LexicalGraph::from_vectors(words(2), &v, 2).is_err());
        assert!(LexicalGraph::from_vectors(words(2), &v, 0).is_err());
    }

    #[test]
    fn ties_prefer_earlier_word() {
        let v = vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![0.0, 1.0], vec![0.0, 1.0]];
        let g = LexicalGraph::from_vectors(words(4), &v, 1).unwrap();
        assert_eq!(g.neighbours(0)[0].0, 1);
        assert_eq!(g.neighbours(3)[0].0, 1);
    }
}
