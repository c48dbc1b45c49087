use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),

    /// A numeric or structural argument is outside its declared range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Bad configuration: unknown keys, unparsable values, missing columns.
    #[error("configuration error: {0}")]
    Config(String),

    /// Input data that cannot be used (malformed lexicon files and the like).
    #[error("data error: {0}")]
    Data(String),

    #[error("empty surviving vocabulary: no word passes min_count={min_count} and max_doc_frac={max_doc_frac}")]
    EmptyVocabulary { min_count: u64, max_doc_frac: f64 },

    #[error("co-occurrence counts are all zero; nothing to build a PPMI matrix from")]
    EmptyCooccurrence,

    #[error("no seed word is present in the graph (missing: {})", missing.join(", "))]
    SeedsMissing { missing: Vec<String> },

    #[error("none of the anchor words is in the vocabulary (missing: {})", missing.join(", "))]
    AnchorsMissing { missing: Vec<String> },

    #[error("singular value decomposition did not converge within {max_iter} iterations")]
    NoConvergence { max_iter: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
}

impl Error {
    /// True for errors caused by the data rather than by how the tool was invoked.
    pub fn is_data_error(&self) -> bool {
        !matches!(self, Error::InvalidParameter(_) | Error::Config(_))
    }
}
