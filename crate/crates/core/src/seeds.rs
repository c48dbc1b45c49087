//! Seed word suggestion from PPMI association with two anchor sets.

use std::io::Write;

use log::warn;

use crate::cooccur::{PpmiMatrix, Vocabulary};
use crate::error::{Error, Result};
use crate::lexicon::ValenceTable;

#[derive(Debug, Clone, PartialEq)]
pub struct SeedCandidate {
    pub word: String,
    pub ppmi_distance: f64,
    pub base_valence: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeedSuggestions {
    pub positive: Vec<SeedCandidate>,
    pub negative: Vec<SeedCandidate>,
    /// Anchor words that were not in the vocabulary.
    pub missing_anchors: Vec<String>,
}

impl SeedSuggestions {
    /// Writes `pole<TAB>word<TAB>ppmi_distance<TAB>base_valence`.
    pub fn write_tsv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for (pole, list) in [("pos", &self.positive), ("neg", &self.negative)] {
            for c in list {
                let base = c.base_valence.map(|v| v.to_string()).unwrap_or_default();
                writeln!(out, "{pole}\t{}\t{}\t{base}", c.word, c.ppmi_distance)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuggestOptions {
    pub top_n: usize,
    /// Minimum |base valence| when a base lexicon filters candidates.
    pub min_base_strength: f64,
}

impl Default for SuggestOptions {
    fn default() -> Self {
        Self {
            top_n: 20,
            min_base_strength: 1.5,
        }
    }
}

fn resolve(vocab: &Vocabulary, anchors: &[String], missing: &mut Vec<String>) -> Vec<usize> {
    let mut ids = Vec::new();
    for a in anchors {
        match vocab.index_of(a) {
            Some(i) if !ids.contains(&i) => ids.push(i),
            Some(_) => {}
            None => missing.push(a.clone()),
        }
    }
    ids
}

/// Mean PPMI of every word to `set1` minus its mean PPMI to `set2`. Anchors
/// absent from the vocabulary are skipped; returns the distances and the
/// skipped anchors.
pub fn ppmi_distances(
    ppmi: &PpmiMatrix,
    vocab: &Vocabulary,
    set1: &[String],
    set2: &[String],
) -> Result<(Vec<f64>, Vec<String>)> {
    if ppmi.dim() != vocab.len() {
        return Err(Error::DimensionMismatch {
            left: ppmi.dim(),
            right: vocab.len(),
        });
    }
    if set1.is_empty() || set2.is_empty() {
        return Err(Error::Config("both anchor sets must be non-empty".into()));
    }
    let mut missing = Vec::new();
    let a = resolve(vocab, set1, &mut missing);
    let b = resolve(vocab, set2, &mut missing);
    if a.is_empty() || b.is_empty() {
        return Err(Error::AnchorsMissing { missing });
    }
    if !missing.is_empty() {
        warn!("anchor words not in vocabulary: {}", missing.join(", "));
    }
    let m = ppmi.as_csr();
    let mut dist = vec![0.0; vocab.len()];
    // PPMI is symmetric, so the anchor rows hold each word's association.
    for (ids, sign) in [(&a, 1.0), (&b, -1.0)] {
        let mut sums = vec![0.0; vocab.len()];
        for &w in ids.iter() {
            let (cols, vals) = m.row(w);
            for (&c, &v) in cols.iter().zip(vals) {
                sums[c as usize] += v;
            }
        }
        let n = ids.len() as f64;
        for (d, s) in dist.iter_mut().zip(sums) {
            *d += sign * (s / n);
        }
    }
    Ok((dist, missing))
}

/// Ranked seed candidates per pole. Words with distance 0 are never
/// suggested. With a base lexicon, candidates must carry a base valence of
/// the pole's sign and magnitude at least `min_base_strength`.
pub fn suggest_seeds(
    ppmi: &PpmiMatrix,
    vocab: &Vocabulary,
    set1: &[String],
    set2: &[String],
    base: Option<&ValenceTable>,
    opts: &SuggestOptions,
) -> Result<SeedSuggestions> {
    let (dist, missing) = ppmi_distances(ppmi, vocab, set1, set2)?;
    let candidate = |i: usize, sign: f64| -> Option<SeedCandidate> {
        if dist[i] * sign <= 0.0 {
            return None;
        }
        let word = vocab.word(i);
        let base_valence = base.and_then(|b| b.get(word));
        if base.is_some() {
            let v = base_valence?;
            if v * sign <= 0.0 || v.abs() < opts.min_base_strength {
                return None;
            }
        }
        Some(SeedCandidate {
            word: word.to_string(),
            ppmi_distance: dist[i],
            base_valence,
        })
    };
    let rank = |sign: f64| {
        let mut list: Vec<SeedCandidate> = (0..vocab.len()).filter_map(|i| candidate(i, sign)).collect();
        list.sort_by(|x, y| {
            (sign * y.ppmi_distance)
                .total_cmp(&(sign * x.ppmi_distance))
                .then_with(|| x.word.cmp(&y.word))
        });
        list.truncate(opts.top_n);
        list
    };
    Ok(SeedSuggestions {
        positive: rank(1.0),
        negative: rank(-1.0),
        missing_anchors: missing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cooccur::{build_vocabulary, count_cooccurrences, ppmi, CooccurrenceMode};
    use crate::corpus::Document;
    use crate::sparse::CsrMatrix;

    fn docs(lists: &[&[&str]]) -> Vec<Document> {
        lists
            .iter()
            .enumerate()
            .map(|(i, t)| Document {
                id: i as u64,
                raw: t.join(" "),
                tokens: t.iter().map(|s| s.to_string()).collect(),
            })
            .collect()
    }

    fn strings(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn one_anchor_association() {
        let words = ["amazing", "bad", "good", "hate", "love", "terrible", "x"];
        let v = build_vocabulary(
            docs(&[&["good", "x"], &["love", "amazing"], &["bad", "hate"], &["terrible", "hate"]]),
            1,
            1.0,
        )
        .unwrap();
        assert_eq!(v.words(), words);
        let x = v.index_of("x").unwrap() as u32;
        let good = v.index_of("good").unwrap() as u32;
        let m = CsrMatrix::from_rows(7, (0..7u32).map(|r| {
            if r == x { vec![(good, 2.0)] } else if r == good { vec![(x, 2.0)] } else { vec![] }
        }).collect());
        let p = PpmiMatrix::from_csr(m).unwrap();
        let (d, _) = ppmi_distances(
            &p,
            &v,
            &strings(&["good", "love", "amazing"]),
            &strings(&["bad", "hate", "terrible"]),
        )
        .unwrap();
        assert!((d[x as usize] - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(d[v.index_of("hate").unwrap()], 0.0);
    }

    #[test]
    fn anchors_missing() {
        let ds = docs(&[&["a", "b"], &["a", "c"]]);
        let v = build_vocabulary(&ds, 1, 1.0).unwrap();
        let p = ppmi(&count_cooccurrences(&ds, &v, CooccurrenceMode::WholeDocument)).unwrap();
        let err = ppmi_distances(&p, &v, &strings(&["zz"]), &strings(&["a"])).unwrap_err();
        assert!(matches!(err, Error::AnchorsMissing { .. }));
        let (_, missing) = ppmi_distances(&p, &v, &strings(&["zz", "b"]), &strings(&["c"])).unwrap();
        assert_eq!(missing, ["zz"]);
    }

    #[test]
    fn base_filter_and_ranking() {
        let ds = docs(&[
            &["good", "sunny"],
            &["good", "sunny"],
            &["good", "fun"],
            &["bad", "storm"],
            &["bad", "storm"],
            &["bad", "grim"],
            &["calm", "quiet"],
        ]);
        let v = build_vocabulary(&ds, 1, 1.0).unwrap();
        let p = ppmi(&count_cooccurrences(&ds, &v, CooccurrenceMode::WholeDocument)).unwrap();
        let s = suggest_seeds(&p, &v, &strings(&["good"]), &strings(&["bad"]), None, &SuggestOptions::default()).unwrap();
        let pos: Vec<&str> = s.positive.iter().map(|c| c.word.as_str()).collect();
        let neg: Vec<&str> = s.negative.iter().map(|c| c.word.as_str()).collect();
        assert!(pos.contains(&"sunny") && pos.contains(&"fun"));
        assert!(neg.contains(&"storm") && neg.contains(&"grim"));
        assert!(!pos.contains(&"calm") && !neg.contains(&"calm"));

        let mut base = ValenceTable::new();
        base.insert("fun", 2.3, None);
        base.insert("sunny", 0.5, None);
        base.insert("grim", -2.0, None);
        let s = suggest_seeds(&p, &v, &strings(&["good"]), &strings(&["bad"]), Some(&base), &SuggestOptions::default()).unwrap();
        assert_eq!(s.positive.len(), 1);
        assert_eq!(s.positive[0].word, "fun");
        assert_eq!(s.negative[0].word, "grim");
        assert_eq!(s.negative[0].base_valence, Some(-2.0));
    }
}
