//! End-to-end lexicon induction: configuration, the two streaming passes over
//! the corpus, and run diagnostics.

use std::fmt::Write as _;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use log::{info, warn};
use rayon::prelude::*;

use crate::cooccur::{ppmi_smoothed, CooccurrenceCounter, CooccurrenceMode, PpmiMatrix, Vocabulary, VocabularyBuilder};
use crate::corpus::{InputFormat, NegationTerms, StopwordList, TextRecord, TextRecords, Tokenizer};
use crate::embed::{truncated_svd_with, EmbeddingMatrix, SvdOptions};
use crate::error::{Error, Result};
use crate::graph::{knn_graph, LexicalGraph};
use crate::lexicon::{induce, merge_with_base, AxisMode, FilterParams, InducedLexicon, MergeStats, RuleLexicon, RuleTables, ValenceTable};
use crate::mem::peak_rss_bytes;
use crate::propagate::{pole_proximities, ProximityTable, SeedSet, WalkParams};
use crate::scorer::ClassificationThresholds;
use crate::seeds::{suggest_seeds, SeedSuggestions, SuggestOptions};

/// Records tokenized together before their statistics are folded in.
const CHUNK_RECORDS: usize = 8192;

/// Every knob of a run. Parsed from a flat `key = value` file; unknown keys
/// are rejected so typos do not silently fall back to defaults.
#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub min_count: u64,
    pub max_doc_frac: f64,
    pub graph_max_doc_frac: f64,
    pub neighbours: usize,
    pub neutral_percentile: f64,
    /// `None` picks the mode's default.
    pub polar_fraction: Option<f64>,
    pub neg_cut: f64,
    pub pos_cut: f64,
    pub dim: usize,
    pub svd_weight: f64,
    pub damping: f64,
    pub tolerance: f64,
    pub max_iter: usize,
    pub cooccurrence: CooccurrenceMode,
    pub smoothing: f64,
    pub mode: AxisMode,
    pub seed_pos: Vec<String>,
    pub seed_neg: Vec<String>,
    pub anchor_pos: Vec<String>,
    pub anchor_neg: Vec<String>,
    pub top_n: usize,
    pub min_base_strength: f64,
    pub rng_seed: u64,
    pub input: Option<PathBuf>,
    pub format: String,
    pub text_field: String,
    pub stopwords: Option<PathBuf>,
    pub negations: Option<PathBuf>,
    pub base_lexicon: Option<PathBuf>,
    pub out_dir: Option<PathBuf>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            min_count: 16,
            max_doc_frac: 0.3,
            graph_max_doc_frac: 0.4,
            neighbours: 20,
            neutral_percentile: 0.55,
            polar_fraction: None,
            neg_cut: -0.05,
            pos_cut: 0.05,
            dim: 100,
            svd_weight: 0.0,
            damping: 0.9,
            tolerance: 1e-6,
            max_iter: 500,
            cooccurrence: CooccurrenceMode::WholeDocument,
            smoothing: 1.0,
            mode: AxisMode::Sentiment,
            seed_pos: Vec::new(),
            seed_neg: Vec::new(),
            anchor_pos: Vec::new(),
            anchor_neg: Vec::new(),
            top_n: 20,
            min_base_strength: 1.5,
            rng_seed: 42,
            input: None,
            format: "plain".into(),
            text_field: "text".into(),
            stopwords: None,
            negations: None,
            base_lexicon: None,
            out_dir: None,
        }
    }
}

/// Splits a comma-separated list, or reads one from a file when the value
/// is `@path`. Tokens are trimmed and lowercased.
pub fn parse_word_list(value: &str, base_dir: &Path) -> Result<Vec<String>> {
    let text = match value.trim().strip_prefix('@') {
        Some(path) => {
            let p = base_dir.join(path.trim());
            std::fs::read_to_string(&p)
                .map_err(|e| Error::Config(format!("cannot read word list {}: {e}", p.display())))?
        }
        None => value.to_string(),
    };
    Ok(text
        .split([',', '\n'])
        .map(|w| w.trim().to_lowercase())
        .filter(|w| !w.is_empty() && !w.starts_with('#'))
        .collect())
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse()
        .map_err(|_| Error::Config(format!("{key}: cannot parse {v:?} as a number")))
}

fn canonical_key(key: &str) -> &str {
    match key {
        "p1" => "min_count",
        "p2a" => "max_doc_frac",
        "p2b" => "graph_max_doc_frac",
        "p3" | "k" => "neighbours",
        "p4" => "neutral_percentile",
        "p5" => "polar_fraction",
        "d" => "dim",
        "beta" => "damping",
        "tol" => "tolerance",
        other => other,
    }
}

impl PipelineConfig {
    /// The mode's default polarised fraction unless one was set explicitly.
    pub fn polar_fraction(&self) -> f64 {
        self.polar_fraction
            .unwrap_or_else(|| self.mode.default_polar_fraction())
    }

    pub fn thresholds(&self) -> Result<ClassificationThresholds> {
        ClassificationThresholds::new(self.neg_cut, self.pos_cut)
    }

    pub fn walk_params(&self) -> WalkParams {
        WalkParams {
            damping: self.damping,
            tolerance: self.tolerance,
            max_iter: self.max_iter,
        }
    }

    pub fn filter_params(&self) -> FilterParams {
        FilterParams {
            neutral_percentile: self.neutral_percentile,
            polar_fraction: self.polar_fraction(),
        }
    }

    /// Sets one key. Relative paths and `@file` lists resolve against `base_dir`.
    pub fn set(&mut self, key: &str, value: &str, base_dir: &Path) -> Result<()> {
        let v = value.trim();
        let path = || Some(base_dir.join(v));
        match canonical_key(&key.trim().to_lowercase()) {
            "min_count" => self.min_count = parse_num("min_count", v)?,
            "max_doc_frac" => self.max_doc_frac = parse_num("max_doc_frac", v)?,
            "graph_max_doc_frac" => self.graph_max_doc_frac = parse_num("graph_max_doc_frac", v)?,
            "neighbours" | "neighbors" => self.neighbours = parse_num("neighbours", v)?,
            "neutral_percentile" => self.neutral_percentile = parse_num("neutral_percentile", v)?,
            "polar_fraction" => {
                self.polar_fraction = if v == "auto" { None } else { Some(parse_num("polar_fraction", v)?) }
            }
            "neg_cut" => self.neg_cut = parse_num("neg_cut", v)?,
            "pos_cut" => self.pos_cut = parse_num("pos_cut", v)?,
            "dim" => self.dim = parse_num("dim", v)?,
            "svd_weight" => self.svd_weight = parse_num("svd_weight", v)?,
            "damping" => self.damping = parse_num("damping", v)?,
            "tolerance" => self.tolerance = parse_num("tolerance", v)?,
            "max_iter" => self.max_iter = parse_num("max_iter", v)?,
            "cooccurrence" => self.cooccurrence = CooccurrenceMode::parse(v)?,
            "smoothing" => self.smoothing = parse_num("smoothing", v)?,
            "mode" => self.mode = AxisMode::parse(v)?,
            "seed_pos" => self.seed_pos = parse_word_list(v, base_dir)?,
            "seed_neg" => self.seed_neg = parse_word_list(v, base_dir)?,
            "anchor_pos" => self.anchor_pos = parse_word_list(v, base_dir)?,
            "anchor_neg" => self.anchor_neg = parse_word_list(v, base_dir)?,
            "top_n" => self.top_n = parse_num("top_n", v)?,
            "min_base_strength" => self.min_base_strength = parse_num("min_base_strength", v)?,
            "rng_seed" => self.rng_seed = parse_num("rng_seed", v)?,
            "input" => self.input = path(),
            "format" => self.format = v.to_string(),
            "text_field" => self.text_field = v.to_string(),
            "stopwords" => self.stopwords = path(),
            "negations" => self.negations = path(),
            "base_lexicon" => self.base_lexicon = path(),
            "out_dir" => self.out_dir = path(),
            other => return Err(Error::Config(format!("unknown configuration key {other:?}"))),
        }
        Ok(())
    }

    /// Parses `key = value` lines; `#` starts a comment line.
    pub fn parse(text: &str, base_dir: &Path) -> Result<Self> {
        let mut cfg = Self::default();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", n + 1)))?;
            cfg.set(k, v, base_dir)
                .map_err(|e| Error::Config(format!("line {}: {e}", n + 1)))?;
        }
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text, path.parent().unwrap_or(Path::new(".")))
    }

    /// Canonical text form; parsing it back gives an equal config.
    pub fn to_conf_string(&self) -> String {
        let mut s = String::new();
        let list = |v: &[String]| v.join(",");
        let mut kv = |k: &str, v: String| {
            let _ = writeln!(s, "{k} = {v}");
        };
        kv("mode", self.mode.to_string());
        kv("min_count", self.min_count.to_string());
        kv("max_doc_frac", self.max_doc_frac.to_string());
        kv("graph_max_doc_frac", self.graph_max_doc_frac.to_string());
        kv("neighbours", self.neighbours.to_string());
        kv("neutral_percentile", self.neutral_percentile.to_string());
        kv("polar_fraction", self.polar_fraction().to_string());
        kv("neg_cut", self.neg_cut.to_string());
        kv("pos_cut", self.pos_cut.to_string());
        kv("dim", self.dim.to_string());
        kv("svd_weight", self.svd_weight.to_string());
        kv("damping", self.damping.to_string());
        kv("tolerance", self.tolerance.to_string());
        kv("max_iter", self.max_iter.to_string());
        kv("cooccurrence", self.cooccurrence.to_string());
        kv("smoothing", self.smoothing.to_string());
        kv("rng_seed", self.rng_seed.to_string());
        kv("seed_pos", list(&self.seed_pos));
        kv("seed_neg", list(&self.seed_neg));
        if !self.anchor_pos.is_empty() {
            kv("anchor_pos", list(&self.anchor_pos));
        }
        if !self.anchor_neg.is_empty() {
            kv("anchor_neg", list(&self.anchor_neg));
        }
        kv("top_n", self.top_n.to_string());
        kv("min_base_strength", self.min_base_strength.to_string());
        kv("format", self.format.clone());
        kv("text_field", self.text_field.clone());
        let paths = [
            ("input", &self.input),
            ("stopwords", &self.stopwords),
            ("negations", &self.negations),
            ("base_lexicon", &self.base_lexicon),
            ("out_dir", &self.out_dir),
        ];
        for (k, p) in paths {
            if let Some(p) = p {
                let abs = std::path::absolute(p).unwrap_or_else(|_| p.clone());
                kv(k, abs.display().to_string());
            }
        }
        s
    }

    /// Range checks shared by every subcommand.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if self.min_count < 1 {
            return bad("min_count must be >= 1".into());
        }
        for (name, v) in [("max_doc_frac", self.max_doc_frac), ("graph_max_doc_frac", self.graph_max_doc_frac)] {
            if !(v > 0.0 && v <= 1.0) {
                return bad(format!("{name} must lie in (0, 1], got {v}"));
            }
        }
        if self.neighbours < 1 {
            return bad("neighbours must be >= 1".into());
        }
        if !(0.0..=1.0).contains(&self.neutral_percentile) {
            return bad(format!("neutral_percentile must lie in [0, 1], got {}", self.neutral_percentile));
        }
        let p5 = self.polar_fraction();
        if !(p5 > 0.0 && p5 <= 0.5) {
            return bad(format!("polar_fraction must lie in (0, 0.5], got {p5}"));
        }
        self.thresholds()?;
        if self.dim < 1 {
            return bad("dim must be >= 1".into());
        }
        if !(0.0..=1.0).contains(&self.svd_weight) {
            return bad(format!("svd_weight must lie in [0, 1], got {}", self.svd_weight));
        }
        self.walk_params().validate()?;
        if !(self.smoothing > 0.0 && self.smoothing <= 1.0) {
            return bad(format!("smoothing must lie in (0, 1], got {}", self.smoothing));
        }
        if self.top_n < 1 {
            return bad("top_n must be >= 1".into());
        }
        InputFormat::from_name(&self.format, &self.text_field)?;
        Ok(())
    }

    pub fn input_format(&self) -> Result<InputFormat> {
        InputFormat::from_name(&self.format, &self.text_field)
    }

    pub fn seed_set(&self) -> Result<SeedSet> {
        if self.seed_pos.is_empty() || self.seed_neg.is_empty() {
            return Err(Error::Config("fit needs seed_pos and seed_neg word lists".into()));
        }
        SeedSet::new(self.seed_pos.iter().cloned(), self.seed_neg.iter().cloned())
    }

    /// Training tokenizer with `protected` words removed from the stopwords.
    pub fn tokenizer<'a>(&self, protected: impl IntoIterator<Item = &'a String>) -> Result<Tokenizer> {
        let mut stop = match &self.stopwords {
            Some(p) => StopwordList::parse(&read_resource(p, "stopword list")?)?,
            None => StopwordList::bundled(),
        };
        stop.protect(protected);
        Ok(Tokenizer::new(stop, self.negation_terms()?))
    }

    pub fn negation_terms(&self) -> Result<NegationTerms> {
        Ok(match &self.negations {
            Some(p) => NegationTerms::parse(&read_resource(p, "negation list")?),
            None => NegationTerms::bundled(),
        })
    }

    pub fn rule_tables(&self) -> Result<RuleTables> {
        let mut t = RuleTables::for_mode(self.mode);
        if self.negations.is_some() {
            t.negations = self.negation_terms()?;
        }
        Ok(t)
    }

    pub fn base_lexicon(&self) -> Result<ValenceTable> {
        match &self.base_lexicon {
            Some(p) => ValenceTable::parse(&read_resource(p, "base lexicon")?),
            None => Ok(ValenceTable::bundled_base()),
        }
    }
}

fn read_resource(path: &Path, what: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Config(format!("cannot read {what} {}: {e}", path.display())))
}

/// Wall time and memory high-water mark at the end of one stage.
#[derive(Debug, Clone, PartialEq)]
pub struct StageTiming {
    pub stage: &'static str,
    pub seconds: f64,
    pub peak_rss_bytes: Option<u64>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Diagnostics {
    pub stages: Vec<StageTiming>,
    pub records: u64,
    pub skipped_records: u64,
    pub negated_docs: u64,
    pub training_docs: u64,
    pub distinct_tokens: usize,
    pub vocabulary: usize,
    pub cooccurring_pairs: usize,
    pub ppmi_nonzeros: usize,
    pub embedding_dim: usize,
    pub graph_nodes: usize,
    pub graph_edges: usize,
    pub walk_iterations: (usize, usize),
    pub walk_residuals: (f64, f64),
    pub walk_converged: bool,
    pub missing_seeds: Vec<String>,
    pub scored_words: usize,
    pub unscored_words: usize,
    pub neutral_words: usize,
    pub kept_words: usize,
    pub merge: MergeStats,
    pub lexicon_entries: usize,
}

impl Diagnostics {
    pub fn total_seconds(&self) -> f64 {
        self.stages.iter().map(|s| s.seconds).sum()
    }

    pub fn peak_rss_bytes(&self) -> Option<u64> {
        self.stages.iter().filter_map(|s| s.peak_rss_bytes).max()
    }

    /// `# key = value` lines, so a manifest stays parseable as a config.
    pub fn to_comment_lines(&self) -> String {
        let mut s = String::new();
        let mut kv = |k: &str, v: String| {
            let _ = writeln!(s, "# {k} = {v}");
        };
        kv("records", self.records.to_string());
        kv("skipped_records", self.skipped_records.to_string());
        kv("negated_docs", self.negated_docs.to_string());
        kv("training_docs", self.training_docs.to_string());
        kv("distinct_tokens", self.distinct_tokens.to_string());
        kv("vocabulary", self.vocabulary.to_string());
        kv("cooccurring_pairs", self.cooccurring_pairs.to_string());
        kv("ppmi_nonzeros", self.ppmi_nonzeros.to_string());
        kv("embedding_dim", self.embedding_dim.to_string());
        kv("graph_nodes", self.graph_nodes.to_string());
        kv("graph_edges", self.graph_edges.to_string());
        kv(
            "walk_iterations",
            format!("{} {}", self.walk_iterations.0, self.walk_iterations.1),
        );
        kv(
            "walk_residuals",
            format!("{:e} {:e}", self.walk_residuals.0, self.walk_residuals.1),
        );
        kv("walk_converged", self.walk_converged.to_string());
        kv("missing_seeds", self.missing_seeds.join(","));
        kv("scored_words", self.scored_words.to_string());
        kv("unscored_words", self.unscored_words.to_string());
        kv("neutral_words", self.neutral_words.to_string());
        kv("kept_words", self.kept_words.to_string());
        kv(
            "merge",
            format!(
                "base={} deleted={} overridden={} inserted={} skipped_rule_words={}",
                self.merge.base, self.merge.deleted, self.merge.overridden, self.merge.inserted, self.merge.skipped_rule_words
            ),
        );
        kv("lexicon_entries", self.lexicon_entries.to_string());
        for st in &self.stages {
            let mem = st
                .peak_rss_bytes
                .map(|b| format!("{:.1}MB", b as f64 / 1048576.0))
                .unwrap_or_else(|| "n/a".into());
            kv(&format!("stage.{}", st.stage), format!("{:.3}s peak_rss={mem}", st.seconds));
        }
        kv("total_seconds", format!("{:.3}", self.total_seconds()));
        s
    }
}

struct StageClock {
    started: Instant,
}

impl StageClock {
    fn start() -> Self {
        Self {
            started: Instant::now(),
        }
    }

    fn lap(&mut self, diag: &mut Diagnostics, stage: &'static str) {
        let seconds = self.started.elapsed().as_secs_f64();
        info!("stage {stage} finished in {seconds:.3}s");
        diag.stages.push(StageTiming {
            stage,
            seconds,
            peak_rss_bytes: peak_rss_bytes(),
        });
        self.started = Instant::now();
    }
}

/// Opens the corpus afresh for each pass.
pub trait CorpusSource {
    fn open(&mut self) -> Result<Box<dyn BufRead + Send>>;
}

impl<F> CorpusSource for F
where
    F: FnMut() -> Result<Box<dyn BufRead + Send>>,
{
    fn open(&mut self) -> Result<Box<dyn BufRead + Send>> {
        self()
    }
}

/// Feeds records to `f` in fixed-size chunks.
fn for_each_chunk(
    reader: Box<dyn BufRead + Send>,
    format: &InputFormat,
    mut f: impl FnMut(Vec<TextRecord>),
) -> Result<u64> {
    let mut records = TextRecords::new(reader, format)?;
    let mut chunk = Vec::with_capacity(CHUNK_RECORDS);
    for r in records.by_ref() {
        chunk.push(r?);
        if chunk.len() == CHUNK_RECORDS {
            f(std::mem::replace(&mut chunk, Vec::with_capacity(CHUNK_RECORDS)));
        }
    }
    if !chunk.is_empty() {
        f(chunk);
    }
    Ok(records.skipped())
}

/// Vocabulary, PPMI matrix and the corpus statistics behind them.
#[derive(Debug, Clone)]
pub struct CorpusModel {
    pub vocabulary: Vocabulary,
    pub ppmi: PpmiMatrix,
}

/// The first two passes: vocabulary, then co-occurrence counts and PPMI.
pub fn build_corpus_model(
    cfg: &PipelineConfig,
    tokenizer: &Tokenizer,
    source: &mut dyn CorpusSource,
    diag: &mut Diagnostics,
) -> Result<CorpusModel> {
    let format = cfg.input_format()?;
    let mut clock = StageClock::start();

    let mut builder = VocabularyBuilder::new();
    let mut records = 0u64;
    let mut negated = 0u64;
    let skipped = for_each_chunk(source.open()?, &format, |chunk| {
        records += chunk.len() as u64;
        let docs: Vec<Option<Vec<String>>> = chunk
            .into_par_iter()
            .map(|r| tokenizer.training_document(r.id, r.text).map(|d| d.tokens))
            .collect();
        for d in docs {
            match d {
                Some(tokens) => builder.add_document(&tokens),
                None => negated += 1,
            }
        }
    })?;
    diag.records = records;
    diag.skipped_records = skipped;
    diag.negated_docs = negated;
    diag.training_docs = builder.n_docs();
    diag.distinct_tokens = builder.distinct();
    if skipped > 0 {
        warn!("skipped {skipped} malformed records");
    }
    if builder.n_docs() == 0 {
        return Err(Error::EmptyVocabulary {
            min_count: cfg.min_count,
            max_doc_frac: cfg.max_doc_frac,
        });
    }
    let vocabulary = builder.finish(cfg.min_count, cfg.max_doc_frac)?;
    diag.vocabulary = vocabulary.len();
    clock.lap(diag, "vocabulary");

    let mut counter = CooccurrenceCounter::new(vocabulary.len(), cfg.cooccurrence);
    for_each_chunk(source.open()?, &format, |chunk| {
        let ids: Vec<Vec<Option<u32>>> = chunk
            .into_par_iter()
            .filter_map(|r| tokenizer.training_document(r.id, r.text))
            .map(|d| {
                d.tokens
                    .iter()
                    .map(|t| vocabulary.index_of(t).map(|i| i as u32))
                    .collect()
            })
            .collect();
        for doc in &ids {
            counter.add_ids(doc);
        }
    })?;
    diag.cooccurring_pairs = counter.distinct_pairs();
    let counts = counter.finish();
    clock.lap(diag, "cooccurrence");

    let ppmi = ppmi_smoothed(&counts, cfg.smoothing)?;
    drop(counts);
    diag.ppmi_nonzeros = ppmi.nnz();
    clock.lap(diag, "ppmi");
    Ok(CorpusModel { vocabulary, ppmi })
}

/// Everything a fit produces.
#[derive(Debug, Clone)]
pub struct FitOutput {
    pub config: PipelineConfig,
    pub lexicon: RuleLexicon,
    pub induced: InducedLexicon,
    pub proximities: ProximityTable,
    pub model: CorpusModel,
    pub embedding: EmbeddingMatrix,
    pub graph: LexicalGraph,
    pub diagnostics: Diagnostics,
}

impl FitOutput {
    /// The config followed by diagnostics as comments.
    pub fn manifest(&self) -> String {
        format!(
            "{}# diagnostics\n{}",
            self.config.to_conf_string(),
            self.diagnostics.to_comment_lines()
        )
    }

    pub fn lexicon_tsv(&self) -> String {
        self.lexicon.valences().to_tsv_string()
    }
}

/// Runs the whole induction pipeline over `source`.
pub fn fit(cfg: &PipelineConfig, source: &mut dyn CorpusSource) -> Result<FitOutput> {
    cfg.validate()?;
    let seeds = cfg.seed_set()?;
    let tables = cfg.rule_tables()?;
    let base = match cfg.mode {
        AxisMode::Sentiment => cfg.base_lexicon()?,
        AxisMode::BareAxis => ValenceTable::new(),
    };
    let tokenizer = cfg.tokenizer(cfg.seed_pos.iter().chain(&cfg.seed_neg))?;
    let mut diag = Diagnostics::default();

    let model = build_corpus_model(cfg, &tokenizer, source, &mut diag)?;
    let mut clock = StageClock::start();

    let rank_cap = model.vocabulary.len();
    let dim = if cfg.dim > rank_cap {
        warn!("dim={} exceeds vocabulary size {rank_cap}; using {rank_cap}", cfg.dim);
        rank_cap
    } else {
        cfg.dim
    };
    let mut svd = SvdOptions::new(dim, cfg.rng_seed);
    svd.weight_exponent = cfg.svd_weight;
    let embedding = truncated_svd_with(&model.ppmi, &svd)?;
    diag.embedding_dim = dim;
    clock.lap(&mut diag, "svd");

    let graph = knn_graph(&embedding, &model.vocabulary, cfg.neighbours, cfg.graph_max_doc_frac)?;
    diag.graph_nodes = graph.len();
    diag.graph_edges = graph.adjacency().nnz() / 2;
    clock.lap(&mut diag, "graph");

    let walks = pole_proximities(&graph, &seeds, &cfg.walk_params())?;
    diag.walk_iterations = (walks.positive.iterations, walks.negative.iterations);
    diag.walk_residuals = (walks.positive.residual, walks.negative.residual);
    diag.walk_converged = walks.positive.converged && walks.negative.converged;
    diag.missing_seeds = walks
        .positive
        .missing_seeds
        .iter()
        .chain(&walks.negative.missing_seeds)
        .cloned()
        .collect();
    clock.lap(&mut diag, "propagate");

    let induced = induce(&walks.table, &seeds, &cfg.filter_params())?;
    let (lexicon, merge) = merge_with_base(&induced, &base, cfg.mode, tables)?;
    diag.scored_words = induced.entries.len();
    diag.unscored_words = induced.unscored.len();
    diag.neutral_words = induced.entries.iter().filter(|e| e.neutral).count();
    diag.kept_words = induced.entries.iter().filter(|e| e.kept).count();
    diag.merge = merge;
    diag.lexicon_entries = lexicon.len();
    clock.lap(&mut diag, "lexicon");

    Ok(FitOutput {
        config: cfg.clone(),
        lexicon,
        induced,
        proximities: walks.table,
        model,
        embedding,
        graph,
        diagnostics: diag,
    })
}

/// Ranks seed candidates around the configured anchor sets.
pub fn suggest(cfg: &PipelineConfig, source: &mut dyn CorpusSource) -> Result<(SeedSuggestions, Diagnostics)> {
    cfg.validate()?;
    if cfg.anchor_pos.is_empty() || cfg.anchor_neg.is_empty() {
        return Err(Error::Config("suggest-seeds needs anchor_pos and anchor_neg word lists".into()));
    }
    let tokenizer = cfg.tokenizer(cfg.anchor_pos.iter().chain(&cfg.anchor_neg))?;
    let mut diag = Diagnostics::default();
    let model = build_corpus_model(cfg, &tokenizer, source, &mut diag)?;
    let base = match cfg.mode {
        AxisMode::Sentiment => Some(cfg.base_lexicon()?),
        AxisMode::BareAxis => None,
    };
    let opts = SuggestOptions {
        top_n: cfg.top_n,
        min_base_strength: cfg.min_base_strength,
    };
    let out = suggest_seeds(
        &model.ppmi,
        &model.vocabulary,
        &cfg.anchor_pos,
        &cfg.anchor_neg,
        base.as_ref(),
        &opts,
    )?;
    Ok((out, diag))
}

/// A corpus held in memory, handy for tests and small inputs.
pub fn memory_source(text: impl Into<String>) -> impl CorpusSource {
    let text: std::sync::Arc<str> = text.into().into();
    move || -> Result<Box<dyn BufRead + Send>> {
        Ok(Box::new(std::io::Cursor::new(text.as_bytes().to_vec())))
    }
}

/// A corpus file, reopened for every pass.
pub fn file_source(path: PathBuf) -> impl CorpusSource {
    move || -> Result<Box<dyn BufRead + Send>> {
        let f = std::fs::File::open(&path)?;
        Ok(Box::new(std::io::BufReader::with_capacity(1 << 16, f)))
    }
}

/// Writes `bytes` to `path` atomically enough for our purposes: a temporary
/// sibling is written first and renamed into place.
pub fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    let tmp = path.with_extension("partial");
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.flush()?;
    }
    std::fs::rename(&tmp, path)?;
    Ok(())
}
