//! Data files compiled into the library.
//!
//! The base valence dictionary, booster table, special-case phrases and
//! negation list are those of the VADER rule engine (MIT licensed, see
//! `data/LICENSE-base-lexicon.txt`). The stopword list is the common English
//! list used by most NLP toolkits.

pub const BASE_LEXICON_TSV: &str = include_str!("../data/base_lexicon.tsv");
pub const BOOSTERS_TSV: &str = include_str!("../data/boosters.tsv");
pub const SPECIAL_CASES_TSV: &str = include_str!("../data/special_cases.tsv");
pub const NEGATIONS_TXT: &str = include_str!("../data/negations.txt");
pub const STOPWORDS_TXT: &str = include_str!("../data/stopwords.txt");

/// Non-empty, trimmed lines of a one-token-per-line file.
pub(crate) fn token_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines().map(str::trim).filter(|l| !l.is_empty())
}
