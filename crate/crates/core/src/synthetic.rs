//! Synthetic corpora with planted polarity, for tests and benchmarks.
//!
//! Every polar document draws a few words from one of two disjoint pole
//! vocabularies (the first `seeds_per_pole` of which serve as seeds) and pads
//! them with filler words from a shared Zipf-distributed neutral vocabulary.

use std::io::Write;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Zipf};

#[derive(Debug, Clone, PartialEq)]
pub struct PlantedConfig {
    pub n_docs: usize,
    /// Words per pole, seeds included.
    pub pole_words: usize,
    pub seeds_per_pole: usize,
    pub neutral_words: usize,
    pub zipf_exponent: f64,
    /// Inclusive range of filler words per document.
    pub filler_len: (usize, usize),
    /// Pole words per polar document.
    pub pole_tokens: usize,
    /// Share of documents that belong to a pole.
    pub polar_frac: f64,
    /// Share of documents that get a "not" and should be excluded in training.
    pub negated_frac: f64,
    pub rng_seed: u64,
}

impl Default for PlantedConfig {
    fn default() -> Self {
        Self {
            n_docs: 5_000,
            pole_words: 40,
            seeds_per_pole: 10,
            neutral_words: 2_000,
            zipf_exponent: 1.0,
            filler_len: (4, 10),
            pole_tokens: 3,
            polar_frac: 0.8,
            negated_frac: 0.05,
            rng_seed: 7,
        }
    }
}

impl PlantedConfig {
    /// Desk-scale analogue of a large tweet collection.
    pub fn large(n_docs: usize, rng_seed: u64) -> Self {
        Self {
            n_docs,
            pole_words: 150,
            seeds_per_pole: 20,
            neutral_words: 12_000,
            zipf_exponent: 1.05,
            filler_len: (5, 14),
            pole_tokens: 2,
            polar_frac: 0.6,
            negated_frac: 0.05,
            rng_seed,
        }
    }

    pub fn positive_word(i: usize) -> String {
        format!("pos{i:03}")
    }

    pub fn negative_word(i: usize) -> String {
        format!("neg{i:03}")
    }

    pub fn neutral_word(i: usize) -> String {
        format!("w{i:05}")
    }

    pub fn positive_seeds(&self) -> Vec<String> {
        (0..self.seeds_per_pole).map(Self::positive_word).collect()
    }

    pub fn negative_seeds(&self) -> Vec<String> {
        (0..self.seeds_per_pole).map(Self::negative_word).collect()
    }

    /// Planted pole words that are not seeds.
    pub fn planted_positive(&self) -> Vec<String> {
        (self.seeds_per_pole..self.pole_words).map(Self::positive_word).collect()
    }

    pub fn planted_negative(&self) -> Vec<String> {
        (self.seeds_per_pole..self.pole_words).map(Self::negative_word).collect()
    }

    pub fn documents(&self) -> PlantedDocs {
        PlantedDocs {
            cfg: self.clone(),
            rng: ChaCha8Rng::seed_from_u64(self.rng_seed),
            zipf: Zipf::new(self.neutral_words as u64, self.zipf_exponent).expect("valid zipf parameters"),
            produced: 0,
        }
    }

    /// Writes the corpus as plain text, one document per line.
    pub fn write_lines<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for d in self.documents() {
            writeln!(out, "{d}")?;
        }
        Ok(())
    }
}

/// Lazily generated documents, deterministic for a given config.
pub struct PlantedDocs {
    cfg: PlantedConfig,
    rng: ChaCha8Rng,
    zipf: Zipf<f64>,
    produced: usize,
}

impl Iterator for PlantedDocs {
    type Item = String;

    fn next(&mut self) -> Option<String> {
        if self.produced == self.cfg.n_docs {
            return None;
        }
        self.produced += 1;
        let cfg = &self.cfg;
        let rng = &mut self.rng;
        let filler = rng.gen_range(cfg.filler_len.0..=cfg.filler_len.1);
        let mut words: Vec<String> = (0..filler)
            .map(|_| PlantedConfig::neutral_word(self.zipf.sample(rng) as usize - 1))
            .collect();
        if rng.gen_bool(cfg.polar_frac) {
            let positive = rng.gen_bool(0.5);
            for _ in 0..cfg.pole_tokens {
                let i = rng.gen_range(0..cfg.pole_words);
                words.push(if positive {
                    PlantedConfig::positive_word(i)
                } else {
                    PlantedConfig::negative_word(i)
                });
            }
        }
        if rng.gen_bool(cfg.negated_frac) {
            words.push("not".to_string());
        }
        words.shuffle(rng);
        let mut text = words.join(" ");
        if rng.gen_bool(0.1) {
            text.push('!');
        }
        Some(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_sized() {
        let cfg = PlantedConfig {
            n_docs: 50,
            ..PlantedConfig::default()
        };
        let a: Vec<String> = cfg.documents().collect();
        let b: Vec<String> = cfg.documents().collect();
        assert_eq!(a.len(), 50);
        assert_eq!(a, b);
    }

    #[test]
    fn poles_never_mix() {
        let cfg = PlantedConfig {
            n_docs: 500,
            ..PlantedConfig::default()
        };
        for d in cfg.documents() {
            assert!(!(d.contains("pos") && d.contains("neg")), "{d}");
        }
    }
}
