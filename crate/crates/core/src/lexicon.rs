//! Scaling and filtering of propagated polarities, valence tables and the
//! merged scoring dictionary.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::io::{BufRead, Write};

use crate::corpus::NegationTerms;
use crate::error::{Error, Result};
use crate::propagate::{polarity, ProximityTable, SeedSet};
use crate::resources;

/// Largest valence magnitude accepted by the scorer.
pub const VALENCE_LIMIT: f64 = 4.0;

/// Inclusive percentile with linear interpolation between order statistics.
/// `q` is a fraction in `[0, 1]`; returns `None` for empty input.
pub fn percentile(values: &[f64], q: f64) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    Some(percentile_sorted(&sorted, q))
}

fn percentile_sorted(sorted: &[f64], q: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * q.clamp(0.0, 1.0);
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Mean-centres `raw` and rescales so the largest magnitude is 4.
/// Returns `(centered, scaled)`; all zeros when every value is equal.
pub fn scale_polarities(raw: &[f64]) -> (Vec<f64>, Vec<f64>) {
    if raw.is_empty() {
        return (Vec::new(), Vec::new());
    }
    let mean = raw.iter().sum::<f64>() / raw.len() as f64;
    let centered: Vec<f64> = raw.iter().map(|r| r - mean).collect();
    let max_abs = centered.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let scaled = if max_abs == 0.0 {
        vec![0.0; raw.len()]
    } else {
        centered.iter().map(|c| VALENCE_LIMIT * c / max_abs).collect()
    };
    (centered, scaled)
}

fn check_fraction(name: &str, v: f64, lo_open: bool, hi: f64) -> Result<()> {
    let ok = if lo_open { v > 0.0 && v <= hi } else { (0.0..=hi).contains(&v) };
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} out of range: {v}")))
    }
}

/// Indices of words whose proximity to both poles is below the `p4`
/// percentile of that pole's proximities.
pub fn neutrality_filter(pos: &[f64], neg: &[f64], p4: f64) -> Result<Vec<usize>> {
    check_fraction("neutral percentile", p4, false, 1.0)?;
    if pos.len() != neg.len() {
        return Err(Error::DimensionMismatch {
            left: pos.len(),
            right: neg.len(),
        });
    }
    let (Some(t_pos), Some(t_neg)) = (percentile(pos, p4), percentile(neg, p4)) else {
        return Ok(Vec::new());
    };
    Ok((0..pos.len())
        .filter(|&i| pos[i] < t_pos && neg[i] < t_neg)
        .collect())
}

/// Indices in the top and bottom `p5` tails of `pos - neg`.
pub fn polarised_filter(pos: &[f64], neg: &[f64], p5: f64) -> Result<(Vec<usize>, Vec<usize>)> {
    check_fraction("polarised fraction", p5, true, 0.5)?;
    if pos.len() != neg.len() {
        return Err(Error::DimensionMismatch {
            left: pos.len(),
            right: neg.len(),
        });
    }
    let delta: Vec<f64> = pos.iter().zip(neg).map(|(p, n)| p - n).collect();
    let mut sorted = delta.clone();
    sorted.sort_by(f64::total_cmp);
    if sorted.is_empty() {
        return Ok((Vec::new(), Vec::new()));
    }
    let upper = percentile_sorted(&sorted, 1.0 - p5);
    let lower = percentile_sorted(&sorted, p5);
    let positive = (0..delta.len()).filter(|&i| delta[i] >= upper).collect();
    let negative = (0..delta.len()).filter(|&i| delta[i] <= lower).collect();
    Ok((positive, negative))
}

/// One scored word of an induced lexicon.
#[derive(Debug, Clone, PartialEq)]
pub struct InducedEntry {
    pub word: String,
    pub pos_prox: f64,
    pub neg_prox: f64,
    pub raw_polarity: f64,
    pub centered_polarity: f64,
    pub scaled_valence: f64,
    pub neutral: bool,
    pub kept: bool,
    pub seed: bool,
}

/// Graph words that received any proximity, with their Eq-style scores and
/// filter verdicts. Words never reached by either walk are listed separately.
#[derive(Debug, Clone, PartialEq)]
pub struct InducedLexicon {
    pub entries: Vec<InducedEntry>,
    pub unscored: Vec<String>,
    pub neutral_thresholds: (f64, f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilterParams {
    /// Neutrality percentile (P4).
    pub neutral_percentile: f64,
    /// Fraction kept in each tail (P5).
    pub polar_fraction: f64,
}

impl Default for FilterParams {
    fn default() -> Self {
        Self {
            neutral_percentile: 0.55,
            polar_fraction: 0.13,
        }
    }
}

impl InducedLexicon {
    pub fn kept(&self) -> impl Iterator<Item = &InducedEntry> {
        self.entries.iter().filter(|e| e.kept)
    }

    pub fn neutral_words(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().filter(|e| e.neutral).map(|e| e.word.as_str())
    }

    /// Writes one line per scored word with every intermediate quantity.
    pub fn write_tsv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(
            out,
            "word\tpos_prox\tneg_prox\traw_polarity\tcentered\tscaled\tneutral\tkept"
        )?;
        for e in &self.entries {
            writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                e.word,
                e.pos_prox,
                e.neg_prox,
                e.raw_polarity,
                e.centered_polarity,
                e.scaled_valence,
                e.neutral as u8,
                e.kept as u8
            )?;
        }
        Ok(())
    }
}

/// Turns pole proximities into scaled valences and applies the neutrality
/// and polarised filters. Seed words are never flagged neutral and are
/// always kept.
pub fn induce(table: &ProximityTable, seeds: &SeedSet, params: &FilterParams) -> Result<InducedLexicon> {
    let mut entries = Vec::new();
    let mut unscored = Vec::new();
    for i in 0..table.len() {
        match polarity(table.pos[i], table.neg[i]) {
            Some(p) => entries.push(InducedEntry {
                word: table.words[i].clone(),
                pos_prox: table.pos[i],
                neg_prox: table.neg[i],
                raw_polarity: p,
                centered_polarity: 0.0,
                scaled_valence: 0.0,
                neutral: false,
                kept: false,
                seed: seeds.contains(&table.words[i]),
            }),
            None => unscored.push(table.words[i].clone()),
        }
    }
    let raw: Vec<f64> = entries.iter().map(|e| e.raw_polarity).collect();
    let (centered, scaled) = scale_polarities(&raw);
    let pos: Vec<f64> = entries.iter().map(|e| e.pos_prox).collect();
    let neg: Vec<f64> = entries.iter().map(|e| e.neg_prox).collect();
    let neutral = neutrality_filter(&pos, &neg, params.neutral_percentile)?;
    let (top, bottom) = polarised_filter(&pos, &neg, params.polar_fraction)?;
    let thresholds = (
        percentile(&pos, params.neutral_percentile).unwrap_or(0.0),
        percentile(&neg, params.neutral_percentile).unwrap_or(0.0),
    );
    for (e, (c, s)) in entries.iter_mut().zip(centered.into_iter().zip(scaled)) {
        e.centered_polarity = c;
        e.scaled_valence = s;
    }
    for i in neutral {
        entries[i].neutral = !entries[i].seed;
    }
    for i in top.into_iter().chain(bottom) {
        entries[i].kept = !entries[i].neutral;
    }
    for e in entries.iter_mut().filter(|e| e.seed) {
        e.kept = true;
    }
    Ok(InducedLexicon {
        entries,
        unscored,
        neutral_thresholds: thresholds,
    })
}

/// Where a valence entry came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    Base,
    Induced,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Base => "base",
            Provenance::Induced => "induced",
        })
    }
}

impl std::str::FromStr for Provenance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "base" => Ok(Provenance::Base),
            "induced" => Ok(Provenance::Induced),
            other => Err(Error::Data(format!("unknown provenance {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValenceEntry {
    pub valence: f64,
    pub provenance: Option<Provenance>,
}

/// Token to valence map with optional provenance, stored in byte order so
/// writing is deterministic. The TSV form is `token<TAB>valence[<TAB>provenance]`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValenceTable {
    entries: BTreeMap<String, ValenceEntry>,
}

impl ValenceTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bundled_base() -> Self {
        let mut t = Self::parse(resources::BASE_LEXICON_TSV).expect("bundled lexicon is valid");
        t.set_provenance(Provenance::Base);
        t
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::read(text.as_bytes())
    }

    pub fn read<R: BufRead>(reader: R) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (n, line) in reader.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let bad = |why: &str| Error::Data(format!("lexicon line {}: {why}", n + 1));
            let mut fields = line.split('\t');
            let token = fields.next().filter(|t| !t.is_empty()).ok_or_else(|| bad("empty token"))?;
            let valence: f64 = fields
                .next()
                .ok_or_else(|| bad("missing valence column"))?
                .trim()
                .parse()
                .map_err(|_| bad("valence is not a number"))?;
            if !valence.is_finite() {
                return Err(bad("valence is not finite"));
            }
            let provenance = match fields.next() {
                Some(p) => Some(p.trim().parse::<Provenance>().map_err(|e| bad(&e.to_string()))?),
                None => None,
            };
            if fields.next().is_some() {
                return Err(bad("too many columns"));
            }
            if entries
                .insert(token.to_string(), ValenceEntry { valence, provenance })
                .is_some()
            {
                return Err(bad(&format!("duplicate token {token:?}")));
            }
        }
        Ok(Self { entries })
    }

    pub fn write_tsv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for (token, e) in &self.entries {
            match e.provenance {
                Some(p) => writeln!(out, "{token}\t{}\t{p}", e.valence)?,
                None => writeln!(out, "{token}\t{}", e.valence)?,
            }
        }
        Ok(())
    }

    pub fn to_tsv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_tsv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("tokens are UTF-8")
    }

    pub fn get(&self, token: &str) -> Option<f64> {
        self.entries.get(token).map(|e| e.valence)
    }

    pub fn entry(&self, token: &str) -> Option<&ValenceEntry> {
        self.entries.get(token)
    }

    pub fn contains(&self, token: &str) -> bool {
        self.entries.contains_key(token)
    }

    pub fn insert(&mut self, token: impl Into<String>, valence: f64, provenance: Option<Provenance>) {
        self.entries
            .insert(token.into(), ValenceEntry { valence, provenance });
    }

    pub fn remove(&mut self, token: &str) -> Option<ValenceEntry> {
        self.entries.remove(token)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &ValenceEntry)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn set_provenance(&mut self, p: Provenance) {
        for e in self.entries.values_mut() {
            e.provenance = Some(p);
        }
    }

    /// Every valence multiplied by `-1`.
    pub fn negated(&self) -> Self {
        let mut t = self.clone();
        for e in t.entries.values_mut() {
            e.valence = -e.valence;
        }
        t
    }
}

fn parse_weighted(text: &str, what: &str) -> Result<HashMap<String, f64>> {
    let mut map = HashMap::new();
    for (n, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('\t')
            .ok_or_else(|| Error::Data(format!("{what} line {}: expected two columns", n + 1)))?;
        let v: f64 = v
            .trim()
            .parse()
            .map_err(|_| Error::Data(format!("{what} line {}: bad number", n + 1)))?;
        map.insert(k.trim().to_lowercase(), v);
    }
    Ok(map)
}

/// The non-valence vocabularies the scorer needs: degree adverbs, negators
/// and fixed-valence phrases.
#[derive(Debug, Clone, PartialEq)]
pub struct RuleTables {
    /// Boosters (positive) and dampeners (negative), including multi-word ones.
    pub boosters: HashMap<String, f64>,
    pub negations: NegationTerms,
    /// Phrases whose valence overrides the word-level result.
    pub special_cases: HashMap<String, f64>,
    /// Enables the phrase-level idiom rules ("kind of" skipping, special
    /// cases and multi-word boosters).
    pub phrase_rules: bool,
}

impl RuleTables {
    /// Tables of the reference sentiment engine.
    pub fn sentiment() -> Self {
        Self {
            boosters: parse_weighted(resources::BOOSTERS_TSV, "booster table").expect("bundled boosters"),
            negations: NegationTerms::bundled(),
            special_cases: parse_weighted(resources::SPECIAL_CASES_TSV, "special cases")
                .expect("bundled special cases"),
            phrase_rules: true,
        }
    }

    /// Sentiment idioms make no sense on other axes, so phrase rules are off.
    pub fn bare_axis() -> Self {
        Self {
            special_cases: HashMap::new(),
            phrase_rules: false,
            ..Self::sentiment()
        }
    }

    pub fn for_mode(mode: AxisMode) -> Self {
        match mode {
            AxisMode::Sentiment => Self::sentiment(),
            AxisMode::BareAxis => Self::bare_axis(),
        }
    }

    pub fn is_booster(&self, token: &str) -> bool {
        self.boosters.contains_key(token)
    }

    pub fn is_negation(&self, token: &str) -> bool {
        self.negations.contains(token)
    }
}

/// Whether the induced lexicon extends a sentiment dictionary or stands alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisMode {
    Sentiment,
    BareAxis,
}

impl AxisMode {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "sentiment" => Ok(AxisMode::Sentiment),
            "bare-axis" | "bare_axis" | "axis" => Ok(AxisMode::BareAxis),
            other => Err(Error::Config(format!(
                "unknown mode {other:?} (expected sentiment or bare-axis)"
            ))),
        }
    }

    /// Default polarised fraction (P5) for the mode.
    pub fn default_polar_fraction(self) -> f64 {
        match self {
            AxisMode::Sentiment => 0.13,
            AxisMode::BareAxis => 0.30,
        }
    }
}

impl fmt::Display for AxisMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AxisMode::Sentiment => "sentiment",
            AxisMode::BareAxis => "bare-axis",
        })
    }
}

/// A validated scoring dictionary: valences plus rule tables, with every
/// token in exactly one role.
#[derive(Debug, Clone, PartialEq)]
pub struct RuleLexicon {
    valences: ValenceTable,
    tables: RuleTables,
}

impl RuleLexicon {
    pub fn new(valences: ValenceTable, tables: RuleTables) -> Result<Self> {
        for (token, e) in valences.iter() {
            if !(e.valence.abs() <= VALENCE_LIMIT) {
                return Err(Error::Data(format!(
                    "valence of {token:?} is {} (must lie in [-4, 4])",
                    e.valence
                )));
            }
            let lower = token.to_lowercase();
            if tables.is_booster(&lower) || tables.is_negation(&lower) {
                return Err(Error::Data(format!(
                    "{token:?} is both a scored entry and a booster or negation term"
                )));
            }
        }
        Ok(Self { valences, tables })
    }

    /// The bundled base dictionary with the sentiment rule tables.
    pub fn bundled() -> Self {
        Self::new(ValenceTable::bundled_base(), RuleTables::sentiment()).expect("bundled lexicon is valid")
    }

    pub fn valences(&self) -> &ValenceTable {
        &self.valences
    }

    pub fn tables(&self) -> &RuleTables {
        &self.tables
    }

    pub fn valence(&self, token: &str) -> Option<f64> {
        self.valences.get(token)
    }

    pub fn len(&self) -> usize {
        self.valences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.valences.is_empty()
    }

    /// Negates every valence and special-case phrase value.
    pub fn negated(&self) -> Self {
        let mut tables = self.tables.clone();
        for v in tables.special_cases.values_mut() {
            *v = -*v;
        }
        Self {
            valences: self.valences.negated(),
            tables,
        }
    }
}

/// Counts describing a merge, for the run manifest.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MergeStats {
    pub base: usize,
    pub deleted: usize,
    pub overridden: usize,
    pub inserted: usize,
    /// Kept induced words skipped because they are booster or negation terms.
    pub skipped_rule_words: usize,
}

/// Builds the scoring dictionary. Sentiment mode starts from `base`, drops
/// base entries flagged neutral and writes the kept induced valences over
/// it; bare-axis mode uses the kept induced words alone.
pub fn merge_with_base(
    induced: &InducedLexicon,
    base: &ValenceTable,
    mode: AxisMode,
    tables: RuleTables,
) -> Result<(RuleLexicon, MergeStats)> {
    let mut stats = MergeStats::default();
    let mut merged = ValenceTable::new();
    if mode == AxisMode::Sentiment {
        merged = base.clone();
        merged.set_provenance(Provenance::Base);
        stats.base = merged.len();
        let neutral: HashSet<&str> = induced.neutral_words().collect();
        for w in &neutral {
            if merged.remove(w).is_some() {
                stats.deleted += 1;
            }
        }
    }
    for e in induced.kept() {
        if tables.is_booster(&e.word) || tables.is_negation(&e.word) {
            stats.skipped_rule_words += 1;
            continue;
        }
        if merged.contains(&e.word) {
            stats.overridden += 1;
        } else {
            stats.inserted += 1;
        }
        merged.insert(e.word.clone(), e.scaled_valence, Some(Provenance::Induced));
    }
    Ok((RuleLexicon::new(merged, tables)?, stats))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn percentile_interpolates() {
        assert_eq!(percentile(&[1.0, 2.0, 3.0, 4.0], 0.5), Some(2.5));
        assert_eq!(percentile(&[4.0, 1.0, 3.0, 2.0], 0.0), Some(1.0));
        assert_eq!(percentile(&[4.0, 1.0, 3.0, 2.0], 1.0), Some(4.0));
        assert_eq!(percentile(&[7.0], 0.3), Some(7.0));
        assert_eq!(percentile(&[], 0.3), None);
    }

    #[test]
    fn scaling_example() {
        let (c, s) = scale_polarities(&[1.0, 0.25, 0.25, 0.5]);
        assert_eq!(c, [0.5, -0.25, -0.25, 0.0]);
        assert_eq!(s, [4.0, -2.0, -2.0, 0.0]);
        let (_, s) = scale_polarities(&[0.3, 0.3]);
        assert_eq!(s, [0.0, 0.0]);
    }

    #[test]
    fn neutral_filter_examples() {
        let pos = [1.0, 2.0, 3.0, 4.0];
        let neg = [4.0, 3.0, 2.0, 1.0];
        assert!(neutrality_filter(&pos, &neg, 0.5).unwrap().is_empty());
        let pos = [0.01, 0.3, 0.2, 0.5];
        let neg = [0.02, 0.4, 0.6, 0.1];
        assert_eq!(neutrality_filter(&pos, &neg, 0.55).unwrap(), [0]);
        assert!(neutrality_filter(&pos, &neg, 1.5).is_err());
    }

    #[test]
    fn polarised_filter_examples() {
        let pos = [0.9, 0.1, 0.0, 0.0];
        let neg = [0.0, 0.0, 0.05, 0.8];
        let (p, n) = polarised_filter(&pos, &neg, 0.25).unwrap();
        assert_eq!(p, [0]);
        assert_eq!(n, [3]);
        let (p, n) = polarised_filter(&pos, &neg, 0.5).unwrap();
        let mut all: Vec<usize> = p.into_iter().chain(n).collect();
        all.sort();
        all.dedup();
        assert_eq!(all, [0, 1, 2, 3]);
        assert!(polarised_filter(&pos, &neg, 0.0).is_err());
    }

    fn entry(word: &str, scaled: f64, neutral: bool, kept: bool) -> InducedEntry {
        InducedEntry {
            word: word.into(),
            pos_prox: 0.0,
            neg_prox: 0.0,
            raw_polarity: 0.5,
            centered_polarity: 0.0,
            scaled_valence: scaled,
            neutral,
            kept,
            seed: false,
        }
    }

    fn induced(entries: Vec<InducedEntry>) -> InducedLexicon {
        InducedLexicon {
            entries,
            unscored: vec![],
            neutral_thresholds: (0.0, 0.0),
        }
    }

    #[test]
    fn merge_overrides_and_deletes() {
        let mut base = ValenceTable::new();
        base.insert("w1", 2.0, None);
        base.insert("w2", 1.0, None);
        base.insert("w3", -1.0, None);
        let ind = induced(vec![
            entry("w1", -1.5, false, true),
            entry("w2", 0.1, true, false),
            entry("new", 3.0, false, true),
            entry("very", 2.0, false, true),
        ]);
        let (lex, stats) = merge_with_base(&ind, &base, AxisMode::Sentiment, RuleTables::sentiment()).unwrap();
        assert_eq!(lex.valence("w1"), Some(-1.5));
        assert_eq!(lex.valence("w2"), None);
        assert_eq!(lex.valence("w3"), Some(-1.0));
        assert_eq!(lex.valence("new"), Some(3.0));
        assert_eq!(lex.valence("very"), None);
        assert_eq!(stats.skipped_rule_words, 1);
        assert_eq!(lex.len(), stats.base - stats.deleted + stats.inserted);
        assert_eq!(lex.valences().entry("w3").unwrap().provenance, Some(Provenance::Base));
        assert_eq!(lex.valences().entry("w1").unwrap().provenance, Some(Provenance::Induced));
    }

    #[test]
    fn bare_axis_merge_ignores_base() {
        let mut base = ValenceTable::new();
        base.insert("good", 1.9, None);
        let ind = induced(vec![entry("he", -3.1, false, true), entry("she", 3.0, false, true), entry("x", 0.0, false, false)]);
        let (lex, _) = merge_with_base(&ind, &base, AxisMode::BareAxis, RuleTables::bare_axis()).unwrap();
        let words: Vec<&str> = lex.valences().iter().map(|(w, _)| w).collect();
        assert_eq!(words, ["he", "she"]);
    }

    #[test]
    fn table_round_trip_and_errors() {
        let text = "a\t1.5\nb\t-0.25\tinduced\nc\t3\tbase\n";
        let t = ValenceTable::parse(text).unwrap();
        assert_eq!(t.to_tsv_string(), text);
        assert!(ValenceTable::parse("a\tx\n").is_err());
        assert!(ValenceTable::parse("a\n").is_err());
        assert!(ValenceTable::parse("a\t1\na\t2\n").is_err());
        assert!(ValenceTable::parse("a\t1\tmaybe\n").is_err());
    }

    #[test]
    fn bundled_base_round_trips_bytes() {
        let t = ValenceTable::parse(resources::BASE_LEXICON_TSV).unwrap();
        assert_eq!(t.to_tsv_string(), resources::BASE_LEXICON_TSV);
        assert!(t.len() > 7000);
    }

    #[test]
    fn rule_lexicon_validation() {
        let mut v = ValenceTable::new();
        v.insert("huge", 4.5, None);
        assert!(RuleLexicon::new(v, RuleTables::sentiment()).is_err());
        let mut v = ValenceTable::new();
        v.insert("not", 1.0, None);
        assert!(RuleLexicon::new(v, RuleTables::sentiment()).is_err());
        RuleLexicon::bundled();
    }
}
