//! Corpus-driven polarity lexicon induction and rule-based text scoring.
//!
//! The induction pipeline streams a corpus of short texts, builds a PPMI
//! co-occurrence matrix over documents, embeds words with a truncated SVD,
//! links them in a k-nearest-neighbour graph and propagates two seed sets
//! through it with random walks. The resulting polarities are scaled,
//! filtered and merged with a base dictionary, and [`scorer`] applies the
//! merged dictionary to new texts.

pub mod cooccur;
pub mod corpus;
pub mod embed;
pub mod error;
pub mod graph;
pub mod lexicon;
pub mod mem;
pub mod pipeline;
pub mod propagate;
pub mod resources;
pub mod scorer;
pub mod seeds;
pub mod sparse;
pub mod synthetic;

pub use cooccur::{
    build_vocabulary, count_cooccurrences, ppmi, CooccurrenceMatrix, CooccurrenceMode, PpmiMatrix, Vocabulary,
};
pub use corpus::{
    exclude_negated, stream_documents, tokenize_training, Document, InputFormat, NegationTerms, StopwordList,
    Tokenizer,
};
pub use embed::{truncated_svd, EmbeddingMatrix};
pub use error::{Error, Result};
pub use graph::{cosine_similarity, knn_graph, LexicalGraph};
pub use lexicon::{
    merge_with_base, neutrality_filter, percentile, polarised_filter, scale_polarities, AxisMode, InducedLexicon,
    Provenance, RuleLexicon, RuleTables, ValenceTable,
};
pub use pipeline::{fit, suggest, FitOutput, PipelineConfig};
pub use propagate::{polarity, random_walk_proximity, ProximityTable, SeedSet, WalkParams};
pub use scorer::{classify, intensity, score, ClassificationThresholds, Label, ScoreResult, Scorer};
pub use seeds::{suggest_seeds, SeedCandidate};
