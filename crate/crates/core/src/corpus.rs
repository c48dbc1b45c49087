//! Streaming corpus access and training-form tokenization.
//!
//! Training form is what the co-occurrence statistics see: lowercase unigrams
//! with punctuation and stopwords removed. Emoji survive as single tokens
//! (one token per grapheme cluster, so ZWJ sequences and variation selectors
//! stay intact) and apostrophes are kept when they sit inside a word.

use std::collections::HashSet;
use std::io::BufRead;

use log::warn;
use unicode_segmentation::UnicodeSegmentation;

use crate::error::{Error, Result};
use crate::resources;

/// One short text, the unit of co-occurrence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    /// Ordinal of the record in its source (skipped records keep their slot).
    pub id: u64,
    pub raw: String,
    pub tokens: Vec<String>,
}

/// Lowercase words dropped from training-form token lists.
#[derive(Debug, Clone)]
pub struct StopwordList {
    words: HashSet<String>,
}

impl StopwordList {
    pub fn new<I, S>(words: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let words: HashSet<String> = words
            .into_iter()
            .map(|w| w.as_ref().trim().to_lowercase())
            .filter(|w| !w.is_empty())
            .collect();
        if words.is_empty() {
            return Err(Error::Config("stopword list is empty".into()));
        }
        Ok(Self { words })
    }

    /// Parses a UTF-8 file with one token per line.
    pub fn parse(text: &str) -> Result<Self> {
        Self::new(resources::token_lines(text))
    }

    pub fn bundled() -> Self {
        Self::parse(resources::STOPWORDS_TXT).expect("bundled stopword list is valid")
    }

    /// Removes `words` from the list. Seed words must never be filtered out.
    pub fn protect<I, S>(&mut self, words: I)
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        for w in words {
            self.words.remove(&w.as_ref().to_lowercase());
        }
    }

    pub fn contains(&self, token: &str) -> bool {
        self.words.contains(token)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// Lowercase negators; shared by the training-time exclusion and the scorer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegationTerms {
    terms: HashSet<String>,
}

impl NegationTerms {
    pub fn new<I, S>(terms: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        Self {
            terms: terms
                .into_iter()
                .map(|t| t.as_ref().trim().to_lowercase())
                .filter(|t| !t.is_empty())
                .collect(),
        }
    }

    pub fn parse(text: &str) -> Self {
        Self::new(resources::token_lines(text))
    }

    pub fn bundled() -> Self {
        Self::parse(resources::NEGATIONS_TXT)
    }

    pub fn contains(&self, token: &str) -> bool {
        self.terms.contains(token)
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.terms.iter().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum GraphemeClass {
    Word,
    Apostrophe,
    Emoji,
    Other,
}

fn classify(g: &str) -> GraphemeClass {
    let Some(first) = g.chars().next() else {
        return GraphemeClass::Other;
    };
    if g == "'" || g == "\u{2019}" {
        GraphemeClass::Apostrophe
    } else if is_pictographic(first) {
        GraphemeClass::Emoji
    } else if first.is_alphanumeric() {
        GraphemeClass::Word
    } else {
        GraphemeClass::Other
    }
}

/// Approximation of the Unicode `Extended_Pictographic` property plus
/// regional indicators, good enough to recognise emoji in social media text.
pub fn is_pictographic(c: char) -> bool {
    matches!(c as u32,
        0x00A9 | 0x00AE | 0x203C | 0x2049 | 0x2122 | 0x2139
        | 0x2194..=0x2199 | 0x21A9..=0x21AA | 0x231A..=0x231B | 0x2328 | 0x23CF
        | 0x23E9..=0x23F3 | 0x23F8..=0x23FA | 0x24C2 | 0x25AA..=0x25AB | 0x25B6
        | 0x25C0 | 0x25FB..=0x25FE | 0x2600..=0x27BF | 0x2934..=0x2935
        | 0x2B05..=0x2B07 | 0x2B1B..=0x2B1C | 0x2B50 | 0x2B55 | 0x3030 | 0x303D
        | 0x3297 | 0x3299 | 0x1F000..=0x1FAFF | 0x1FC00..=0x1FFFD)
}

/// Training-form tokens before stopword removal. Negation checks run on this
/// stream because most negators are also stopwords.
pub fn raw_training_tokens(text: &str) -> Vec<String> {
    let lower = text.to_lowercase();
    let mut tokens = Vec::new();
    let mut word = String::new();
    let mut pending_apostrophe = false;

    let flush = |word: &mut String, pending: &mut bool, tokens: &mut Vec<String>| {
        if !word.is_empty() {
            tokens.push(std::mem::take(word));
        }
        *pending = false;
    };

    for g in lower.graphemes(true) {
        match classify(g) {
            GraphemeClass::Word => {
                if pending_apostrophe {
                    word.push('\'');
                    pending_apostrophe = false;
                }
                word.push_str(g);
            }
            GraphemeClass::Apostrophe => {
                if pending_apostrophe {
                    flush(&mut word, &mut pending_apostrophe, &mut tokens);
                } else if !word.is_empty() {
                    pending_apostrophe = true;
                }
            }
            GraphemeClass::Emoji => {
                flush(&mut word, &mut pending_apostrophe, &mut tokens);
                tokens.push(g.to_string());
            }
            GraphemeClass::Other => flush(&mut word, &mut pending_apostrophe, &mut tokens),
        }
    }
    flush(&mut word, &mut pending_apostrophe, &mut tokens);
    tokens
}

/// Lowercase unigrams with punctuation and stopwords stripped, order preserved.
pub fn tokenize_training(text: &str, stopwords: &StopwordList) -> Vec<String> {
    let mut tokens = raw_training_tokens(text);
    tokens.retain(|t| !stopwords.contains(t));
    tokens
}

/// Training-form tokenizer that also knows the negation vocabulary, so one
/// call yields both the token list and the negation verdict.
#[derive(Debug, Clone)]
pub struct Tokenizer {
    pub stopwords: StopwordList,
    pub negations: NegationTerms,
}

impl Tokenizer {
    pub fn new(stopwords: StopwordList, negations: NegationTerms) -> Self {
        Self {
            stopwords,
            negations,
        }
    }

    pub fn bundled() -> Self {
        Self::new(StopwordList::bundled(), NegationTerms::bundled())
    }

    pub fn tokenize(&self, text: &str) -> Vec<String> {
        tokenize_training(text, &self.stopwords)
    }

    pub fn document(&self, id: u64, raw: String) -> Document {
        let tokens = self.tokenize(&raw);
        Document { id, raw, tokens }
    }

    /// Tokenizes `raw` and returns `None` when it contains a negation term.
    pub fn training_document(&self, id: u64, raw: String) -> Option<Document> {
        let mut tokens = raw_training_tokens(&raw);
        if tokens.iter().any(|t| self.negations.contains(t)) {
            return None;
        }
        tokens.retain(|t| !self.stopwords.contains(t));
        Some(Document { id, raw, tokens })
    }
}

/// Whether a document mentions any negation term, checked on the
/// pre-stopword token stream of its raw text as well as on its tokens.
pub fn is_negated(doc: &Document, terms: &NegationTerms) -> bool {
    doc.tokens.iter().any(|t| terms.contains(t))
        || raw_training_tokens(&doc.raw)
            .iter()
            .any(|t| terms.contains(t))
}

/// Drops documents that contain a negation term. Only used on training input.
pub fn exclude_negated<'a, I>(docs: I, terms: &'a NegationTerms) -> impl Iterator<Item = Document> + 'a
where
    I: IntoIterator<Item = Document>,
    I::IntoIter: 'a,
{
    docs.into_iter().filter(move |d| !is_negated(d, terms))
}

/// How records are laid out in a source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InputFormat {
    /// One document per line.
    PlainLines,
    /// Comma- or tab-separated records with a header row and quoted fields.
    Delimited { delimiter: u8, text_column: String },
    /// One JSON object per line; the text lives under `text_key`.
    JsonLines { text_key: String },
}

impl InputFormat {
    /// Parses `plain`, `csv`, `tsv` or `jsonl`; `field` names the text column/key.
    pub fn from_name(name: &str, field: &str) -> Result<Self> {
        match name {
            "plain" | "lines" | "txt" => Ok(InputFormat::PlainLines),
            "csv" => Ok(InputFormat::Delimited {
                delimiter: b',',
                text_column: field.to_string(),
            }),
            "tsv" => Ok(InputFormat::Delimited {
                delimiter: b'\t',
                text_column: field.to_string(),
            }),
            "jsonl" | "ndjson" => Ok(InputFormat::JsonLines {
                text_key: field.to_string(),
            }),
            other => Err(Error::Config(format!(
                "unknown input format {other:?} (expected plain, csv, tsv or jsonl)"
            ))),
        }
    }
}

/// A raw text record with its ordinal in the source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TextRecord {
    pub id: u64,
    pub text: String,
}

enum RecordSource<R: BufRead> {
    Lines(R),
    Json(R, String),
    Delimited(csv::StringRecordsIntoIter<R>, usize),
}

/// Lazily yields text records in input order. Malformed records are skipped
/// and counted; I/O failures end the stream with an error.
pub struct TextRecords<R: BufRead> {
    source: RecordSource<R>,
    next_id: u64,
    skipped: u64,
    buf: Vec<u8>,
    failed: bool,
}

impl<R: BufRead> TextRecords<R> {
    pub fn new(reader: R, format: &InputFormat) -> Result<Self> {
        let source = match format {
            InputFormat::PlainLines => RecordSource::Lines(reader),
            InputFormat::JsonLines { text_key } => RecordSource::Json(reader, text_key.clone()),
            InputFormat::Delimited {
                delimiter,
                text_column,
            } => {
                let mut rdr = csv::ReaderBuilder::new()
                    .delimiter(*delimiter)
                    .has_headers(true)
                    .from_reader(reader);
                let headers = rdr.headers().map_err(csv_error)?;
                let column = headers
                    .iter()
                    .position(|h| h == text_column)
                    .ok_or_else(|| {
                        Error::Config(format!("text column {text_column:?} not found in header"))
                    })?;
                RecordSource::Delimited(rdr.into_records(), column)
            }
        };
        Ok(Self {
            source,
            next_id: 0,
            skipped: 0,
            buf: Vec::new(),
            failed: false,
        })
    }

    /// Number of malformed records skipped so far.
    pub fn skipped(&self) -> u64 {
        self.skipped
    }

    fn skip(&mut self, why: &str) {
        warn!("skipping malformed record {}: {why}", self.next_id);
        self.skipped += 1;
        self.next_id += 1;
    }

    fn next_line(&mut self) -> Option<Result<()>> {
        let reader = match &mut self.source {
            RecordSource::Lines(r) | RecordSource::Json(r, _) => r,
            RecordSource::Delimited(..) => unreachable!(),
        };
        self.buf.clear();
        match reader.read_until(b'\n', &mut self.buf) {
            Ok(0) => None,
            Ok(_) => {
                if self.buf.last() == Some(&b'\n') {
                    self.buf.pop();
                    if self.buf.last() == Some(&b'\r') {
                        self.buf.pop();
                    }
                }
                Some(Ok(()))
            }
            Err(e) => Some(Err(e.into())),
        }
    }
}

fn csv_error(e: csv::Error) -> Error {
    if e.is_io_error() {
        match e.into_kind() {
            csv::ErrorKind::Io(io) => Error::Io(io),
            _ => unreachable!(),
        }
    } else {
        Error::Data(e.to_string())
    }
}

impl<R: BufRead> Iterator for TextRecords<R> {
    type Item = Result<TextRecord>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        loop {
            if let RecordSource::Delimited(records, column) = &mut self.source {
                let column = *column;
                match records.next()? {
                    Ok(rec) => match rec.get(column) {
                        Some(text) => {
                            let id = self.next_id;
                            self.next_id += 1;
                            return Some(Ok(TextRecord {
                                id,
                                text: text.to_string(),
                            }));
                        }
                        None => self.skip("missing text column"),
                    },
                    Err(e) if e.is_io_error() => {
                        self.failed = true;
                        return Some(Err(csv_error(e)));
                    }
                    Err(e) => {
                        let msg = e.to_string();
                        self.skip(&msg);
                    }
                }
                continue;
            }

            match self.next_line()? {
                Ok(()) => {}
                Err(e) => {
                    self.failed = true;
                    return Some(Err(e));
                }
            }
            let line = match std::str::from_utf8(&self.buf) {
                Ok(s) => s.to_string(),
                Err(_) => {
                    self.skip("invalid UTF-8");
                    continue;
                }
            };
            match &self.source {
                RecordSource::Lines(_) => {
                    let id = self.next_id;
                    self.next_id += 1;
                    return Some(Ok(TextRecord { id, text: line }));
                }
                RecordSource::Json(_, key) => {
                    if line.trim().is_empty() {
                        continue;
                    }
                    let text = serde_json::from_str::<serde_json::Value>(&line)
                        .ok()
                        .and_then(|v| v.get(key.as_str()).and_then(|t| t.as_str()).map(String::from));
                    match text {
                        Some(text) => {
                            let id = self.next_id;
                            self.next_id += 1;
                            return Some(Ok(TextRecord { id, text }));
                        }
                        None => self.skip("not an object with a string text field"),
                    }
                }
                RecordSource::Delimited(..) => unreachable!(),
            }
        }
    }
}

/// Streams training-form documents from `source`.
pub struct DocumentStream<'t, R: BufRead> {
    records: TextRecords<R>,
    tokenizer: &'t Tokenizer,
}

impl<'t, R: BufRead> DocumentStream<'t, R> {
    pub fn skipped(&self) -> u64 {
        self.records.skipped()
    }
}

impl<R: BufRead> Iterator for DocumentStream<'_, R> {
    type Item = Result<Document>;

    fn next(&mut self) -> Option<Self::Item> {
        self.records
            .next()
            .map(|r| r.map(|rec| self.tokenizer.document(rec.id, rec.text)))
    }
}

pub fn stream_documents<'t, R: BufRead>(
    source: R,
    format: &InputFormat,
    tokenizer: &'t Tokenizer,
) -> Result<DocumentStream<'t, R>> {
    Ok(DocumentStream {
        records: TextRecords::new(source, format)?,
        tokenizer,
    })
}
