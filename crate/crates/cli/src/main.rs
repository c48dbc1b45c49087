use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use lexprop::corpus::{TextRecord, TextRecords};
use lexprop::lexicon::{AxisMode, RuleLexicon, ValenceTable};
use lexprop::pipeline::{file_source, write_file, CorpusSource, PipelineConfig};
use lexprop::scorer::{ScoreResult, Scorer};
use log::info;
use rayon::prelude::*;

const SCORE_CHUNK: usize = 4096;

#[derive(Parser, Debug)]
#[command(name = "lexprop", version, about = "Induce domain-specific polarity lexicons and score text with them")]
struct Cli {
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// More log output on stderr (-v info, -vv debug).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rank seed word candidates by PPMI association with two anchor sets.
    SuggestSeeds(SuggestArgs),
    /// Induce a lexicon from a corpus and write it with diagnostics.
    Fit(FitArgs),
    /// Score texts: pos, neg, neu, compound and intensity per record.
    Score(ScoreArgs),
    /// Score texts and add a positive/negative/neutral label.
    Classify(ScoreArgs),
}

#[derive(Args, Debug, Default)]
struct Common {
    /// Flat `key = value` config file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Input corpus or texts; `-` or omitted reads stdin.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Record format: plain, csv, tsv or jsonl.
    #[arg(long)]
    format: Option<String>,
    /// Column or key holding the text for csv, tsv and jsonl input.
    #[arg(long)]
    text_field: Option<String>,
    /// Polarity axis: sentiment or bare-axis.
    #[arg(long)]
    mode: Option<String>,
    #[arg(long)]
    rng_seed: Option<u64>,
    /// Override any config key, e.g. `--set p5=0.2`. Repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
}

#[derive(Args, Debug)]
struct SuggestArgs {
    #[command(flatten)]
    common: Common,
    /// First anchor set, comma separated or a file of words.
    #[arg(long)]
    anchor_pos: Option<String>,
    /// Second anchor set, comma separated or a file of words.
    #[arg(long)]
    anchor_neg: Option<String>,
    #[arg(long)]
    top_n: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct FitArgs {
    #[command(flatten)]
    common: Common,
    /// Positive seeds, comma separated or a file of words.
    #[arg(long)]
    seed_pos: Option<String>,
    /// Negative seeds, comma separated or a file of words.
    #[arg(long)]
    seed_neg: Option<String>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Also write the PPMI triplets, word vectors and graph edges.
    #[arg(long)]
    dump_all: bool,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum OutputFormat {
    #[default]
    Tsv,
    Jsonl,
}

#[derive(Args, Debug)]
struct ScoreArgs {
    #[command(flatten)]
    common: Common,
    /// Lexicon TSV written by `fit`; defaults to the base lexicon.
    #[arg(long)]
    lexicon: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    output_format: OutputFormat,
    /// Write results here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

/// Errors that are the caller's fault rather than the data's.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.is::<UsageError>() {
            return 1;
        }
        if let Some(e) = cause.downcast_ref::<lexprop::Error>() {
            return if e.is_data_error() { 2 } else { 1 };
        }
        if cause.is::<io::Error>() {
            return 2;
        }
    }
    1
}

fn is_broken_pipe(err: &anyhow::Error) -> bool {
    err.chain().any(|c| {
        c.downcast_ref::<io::Error>().is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe)
            || c.downcast_ref::<lexprop::Error>()
                .is_some_and(|e| matches!(e, lexprop::Error::Io(io) if io.kind() == io::ErrorKind::BrokenPipe))
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level))
        .format_timestamp(None)
        .init();

    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    if let Some(n) = cli.workers {
        if n == 0 {
            return Err(usage("--workers must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("cannot start worker pool")?;
    }
    match cli.command {
        Command::SuggestSeeds(a) => suggest_seeds(a),
        Command::Fit(a) => fit(a),
        Command::Score(a) => score(a, false),
        Command::Classify(a) => score(a, true),
    }
}

fn cwd() -> PathBuf {
    std::env::current_dir().unwrap_or_else(|_| PathBuf::from("."))
}

/// A word-list flag naming an existing file is read as a file.
fn word_list_value(value: &str) -> String {
    if !value.starts_with('@') && Path::new(value).is_file() {
        format!("@{value}")
    } else {
        value.to_string()
    }
}

fn load_config(common: &Common, extra: &[(&str, Option<String>)]) -> Result<PipelineConfig> {
    let mut cfg = match &common.config {
        Some(p) => PipelineConfig::from_file(p)?,
        None => PipelineConfig::default(),
    };
    let dir = cwd();
    let mut flags: Vec<(String, String)> = Vec::new();
    if let Some(p) = &common.input {
        if p.as_os_str() != "-" {
            flags.push(("input".into(), p.display().to_string()));
        } else {
            cfg.input = None;
        }
    }
    for (k, v) in [
        ("format", common.format.clone()),
        ("text_field", common.text_field.clone()),
        ("mode", common.mode.clone()),
        ("rng_seed", common.rng_seed.map(|s| s.to_string())),
    ] {
        if let Some(v) = v {
            flags.push((k.into(), v));
        }
    }
    for (k, v) in extra {
        if let Some(v) = v {
            flags.push((k.to_string(), v.clone()));
        }
    }
    for o in &common.overrides {
        let (k, v) = o
            .split_once('=')
            .ok_or_else(|| usage(format!("--set expects KEY=VALUE, got {o:?}")))?;
        flags.push((k.trim().into(), v.trim().into()));
    }
    for (k, v) in flags {
        cfg.set(&k, &v, &dir).with_context(|| format!("invalid value for {k}"))?;
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Corpus passes need a reopenable source, so stdin is spooled to disk.
fn corpus_source(cfg: &PipelineConfig) -> Result<(Box<dyn CorpusSource>, Option<tempfile::TempPath>)> {
    match &cfg.input {
        Some(p) => {
            File::open(p).with_context(|| format!("cannot open input {}", p.display()))?;
            Ok((Box::new(file_source(p.clone())), None))
        }
        None => {
            let mut tmp = tempfile::NamedTempFile::new().context("cannot create spool file")?;
            io::copy(&mut io::stdin().lock(), &mut tmp).context("cannot read stdin")?;
            tmp.flush()?;
            let path = tmp.into_temp_path();
            Ok((Box::new(file_source(path.to_path_buf())), Some(path)))
        }
    }
}

fn output_writer(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn suggest_seeds(a: SuggestArgs) -> Result<()> {
    let cfg = load_config(
        &a.common,
        &[
            ("anchor_pos", a.anchor_pos.as_deref().map(word_list_value)),
            ("anchor_neg", a.anchor_neg.as_deref().map(word_list_value)),
            ("top_n", a.top_n.map(|n| n.to_string())),
        ],
    )?;
    if cfg.anchor_pos.is_empty() || cfg.anchor_neg.is_empty() {
        return Err(usage("suggest-seeds needs --anchor-pos and --anchor-neg"));
    }
    let (mut source, _spool) = corpus_source(&cfg)?;
    let (report, diag) = lexprop::pipeline::suggest(&cfg, source.as_mut())?;
    info!(
        "{} records, vocabulary {}, {:.2}s",
        diag.records,
        diag.vocabulary,
        diag.total_seconds()
    );
    let mut out = output_writer(a.output.as_deref())?;
    report.write_tsv(&mut out)?;
    out.flush()?;
    Ok(())
}

fn fit(a: FitArgs) -> Result<()> {
    let cfg = load_config(
        &a.common,
        &[
            ("seed_pos", a.seed_pos.as_deref().map(word_list_value)),
            ("seed_neg", a.seed_neg.as_deref().map(word_list_value)),
            ("out_dir", a.out_dir.as_ref().map(|p| p.display().to_string())),
        ],
    )?;
    let out_dir = cfg
        .out_dir
        .clone()
        .ok_or_else(|| usage("fit needs --out-dir (or out_dir in the config)"))?;
    let (mut source, _spool) = corpus_source(&cfg)?;
    let out = lexprop::pipeline::fit(&cfg, source.as_mut())?;
    let d = &out.diagnostics;
    info!(
        "{} records ({} negated, {} skipped), vocabulary {}, graph {} nodes / {} edges, {} kept words, {:.2}s",
        d.records,
        d.negated_docs,
        d.skipped_records,
        d.vocabulary,
        d.graph_nodes,
        d.graph_edges,
        d.kept_words,
        d.total_seconds()
    );

    std::fs::create_dir_all(&out_dir).with_context(|| format!("cannot create {}", out_dir.display()))?;
    let mut files: Vec<(&str, Vec<u8>)> = Vec::new();
    files.push(("lexicon.tsv", out.lexicon_tsv().into_bytes()));
    let mut buf = Vec::new();
    out.proximities.write_tsv(&mut buf)?;
    files.push(("proximities.tsv", buf));
    let mut buf = Vec::new();
    out.induced.write_tsv(&mut buf)?;
    files.push(("induced.tsv", buf));
    if a.dump_all {
        let mut buf = Vec::new();
        out.model.ppmi.write_tsv(&out.model.vocabulary, &mut buf)?;
        files.push(("ppmi.tsv", buf));
        let mut buf = Vec::new();
        out.embedding.write_tsv(&out.model.vocabulary, &mut buf)?;
        files.push(("embedding.tsv", buf));
        let mut buf = Vec::new();
        out.graph.write_edges_tsv(&mut buf)?;
        files.push(("graph.tsv", buf));
    }
    files.push(("manifest.conf", out.manifest().into_bytes()));

    let mut written = Vec::new();
    for (name, bytes) in &files {
        let path = out_dir.join(name);
        if let Err(e) = write_file(&path, bytes) {
            for p in &written {
                let _ = std::fs::remove_file(p);
            }
            let _ = std::fs::remove_file(path.with_extension("partial"));
            return Err(e).with_context(|| format!("cannot write {}", path.display()));
        }
        written.push(path);
    }
    Ok(())
}

fn load_lexicon(cfg: &PipelineConfig, path: Option<&Path>) -> Result<RuleLexicon> {
    let tables = cfg.rule_tables()?;
    let valences = match path {
        Some(p) => {
            let f = File::open(p).with_context(|| format!("cannot open lexicon {}", p.display()))?;
            ValenceTable::read(BufReader::new(f)).with_context(|| format!("cannot parse lexicon {}", p.display()))?
        }
        None if cfg.mode == AxisMode::BareAxis => {
            return Err(usage("bare-axis scoring needs --lexicon from a bare-axis fit"));
        }
        None => cfg.base_lexicon()?,
    };
    Ok(RuleLexicon::new(valences, tables)?)
}

fn write_record(out: &mut dyn Write, format: OutputFormat, id: u64, r: &ScoreResult, label: bool) -> io::Result<()> {
    match format {
        OutputFormat::Tsv => {
            write!(out, "{id}\t{}\t{}\t{}\t{}\t{}", r.pos, r.neg, r.neu, r.compound, r.intensity)?;
            if label {
                write!(out, "\t{}", r.label)?;
            }
            writeln!(out)
        }
        OutputFormat::Jsonl => {
            let mut obj = serde_json::json!({
                "doc_id": id,
                "pos": r.pos,
                "neg": r.neg,
                "neu": r.neu,
                "compound": r.compound,
                "intensity": r.intensity,
            });
            if label {
                obj["label"] = serde_json::Value::String(r.label.to_string());
            }
            writeln!(out, "{obj}")
        }
    }
}

fn score(a: ScoreArgs, label: bool) -> Result<()> {
    let cfg = load_config(&a.common, &[])?;
    let lexicon = load_lexicon(&cfg, a.lexicon.as_deref())?;
    let scorer = Scorer::new(&lexicon).with_thresholds(cfg.thresholds()?);
    let reader: Box<dyn BufRead> = match &cfg.input {
        Some(p) => Box::new(BufReader::new(
            File::open(p).with_context(|| format!("cannot open input {}", p.display()))?,
        )),
        None => Box::new(io::stdin().lock()),
    };
    let mut records = TextRecords::new(reader, &cfg.input_format()?)?;
    let mut out = output_writer(a.output.as_deref())?;
    if matches!(a.output_format, OutputFormat::Tsv) {
        let header = if label { "\tlabel" } else { "" };
        writeln!(out, "doc_id\tpos\tneg\tneu\tcompound\tintensity{header}")?;
    }

    let mut chunk: Vec<TextRecord> = Vec::with_capacity(SCORE_CHUNK);
    let flush = |chunk: &mut Vec<TextRecord>, out: &mut dyn Write| -> Result<()> {
        let results: Vec<ScoreResult> = chunk.par_iter().map(|r| scorer.analyze(&r.text)).collect();
        for (rec, res) in chunk.iter().zip(&results) {
            write_record(out, a.output_format, rec.id, res, label)?;
        }
        chunk.clear();
        Ok(())
    };
    let mut n = 0u64;
    for rec in records.by_ref() {
        chunk.push(rec?);
        n += 1;
        if chunk.len() == SCORE_CHUNK {
            flush(&mut chunk, &mut out)?;
        }
    }
    flush(&mut chunk, &mut out)?;
    out.flush()?;
    let skipped = records.skipped();
    if skipped > 0 {
        log::warn!("skipped {skipped} malformed records");
    }
    info!("scored {n} records");
    if n == 0 && skipped > 0 {
        bail!(lexprop::Error::Data(format!("no readable records ({skipped} malformed)")));
    }
    Ok(())
}
