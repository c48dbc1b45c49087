//! Rule-based text scoring.
//!
//! Tokens are whitespace-separated words with surrounding ASCII punctuation
//! removed (unless that would leave two characters or fewer, which keeps
//! emoticons intact). Each token found in the lexicon gets a valence that is
//! then mutated by capitalisation, preceding boosters and negators, "least",
//! idioms, and a contrastive "but". The sum, pushed away from zero by
//! exclamation and question marks, is squashed into `[-1, 1]`.

use std::fmt;

use crate::error::{Error, Result};
use crate::lexicon::RuleLexicon;

/// Numeric constants of the rule engine.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RuleConstants {
    pub negation_scalar: f64,
    pub caps_increment: f64,
    /// Booster damping by distance 1, 2 and 3 from the scored token.
    pub booster_damping: [f64; 3],
    pub but_before: f64,
    pub but_after: f64,
    /// Multiplier for "never so/this" constructions.
    pub never_so: f64,
    pub exclamation: f64,
    pub exclamation_cap: usize,
    pub question: f64,
    pub question_cap: f64,
    pub alpha: f64,
}

impl Default for RuleConstants {
    fn default() -> Self {
        Self {
            negation_scalar: -0.74,
            caps_increment: 0.733,
            booster_damping: [1.0, 0.95, 0.9],
            but_before: 0.5,
            but_after: 1.5,
            never_so: 1.25,
            exclamation: 0.292,
            exclamation_cap: 4,
            question: 0.18,
            question_cap: 0.96,
            alpha: 15.0,
        }
    }
}

/// Compound cut points; `neg_cut < pos_cut`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassificationThresholds {
    pub neg_cut: f64,
    pub pos_cut: f64,
}

impl Default for ClassificationThresholds {
    fn default() -> Self {
        Self {
            neg_cut: -0.05,
            pos_cut: 0.05,
        }
    }
}

impl ClassificationThresholds {
    pub fn new(neg_cut: f64, pos_cut: f64) -> Result<Self> {
        if !(-1.0 <= neg_cut && neg_cut < pos_cut && pos_cut <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "classification thresholds must satisfy -1 <= neg_cut < pos_cut <= 1, got {neg_cut} and {pos_cut}"
            )));
        }
        Ok(Self { neg_cut, pos_cut })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    Positive,
    Negative,
    Neutral,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::Positive => "positive",
            Label::Negative => "negative",
            Label::Neutral => "neutral",
        })
    }
}

pub fn classify(compound: f64, thresholds: &ClassificationThresholds) -> Label {
    if compound >= thresholds.pos_cut {
        Label::Positive
    } else if compound <= thresholds.neg_cut {
        Label::Negative
    } else {
        Label::Neutral
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScoreResult {
    pub pos: f64,
    pub neg: f64,
    pub neu: f64,
    pub compound: f64,
    pub intensity: f64,
    pub label: Label,
}

fn normalize(score: f64, alpha: f64) -> f64 {
    (score / (score * score + alpha).sqrt()).clamp(-1.0, 1.0)
}

const ASCII_PUNCT: &str = "!\"#$%&'()*+,-./:;<=>?@[\\]^_`{|}~";

fn is_split_space(c: char) -> bool {
    c.is_whitespace() || ('\u{1c}'..='\u{1f}').contains(&c)
}

fn strip_punct(token: &str) -> &str {
    let stripped = token.trim_matches(|c| ASCII_PUNCT.contains(c));
    if stripped.chars().count() <= 2 {
        token
    } else {
        stripped
    }
}

/// Whitespace-split tokens with surrounding punctuation removed.
pub fn scoring_tokens(text: &str) -> Vec<&str> {
    text.split(is_split_space)
        .filter(|t| !t.is_empty())
        .map(strip_punct)
        .collect()
}

/// Has at least one cased letter and no lowercase ones.
fn is_upper(token: &str) -> bool {
    let mut cased = false;
    for c in token.chars() {
        if c.is_lowercase() {
            return false;
        }
        cased |= c.is_uppercase();
    }
    cased
}

/// Some, but not all, tokens are ALL CAPS.
fn cap_differential(tokens: &[&str]) -> bool {
    let upper = tokens.iter().filter(|t| is_upper(t)).count();
    upper > 0 && upper < tokens.len()
}

struct Sentence<'a> {
    words: Vec<&'a str>,
    lower: Vec<String>,
    cap_diff: bool,
}

/// Scores texts against a lexicon.
#[derive(Debug, Clone, Copy)]
pub struct Scorer<'a> {
    lexicon: &'a RuleLexicon,
    constants: RuleConstants,
    thresholds: ClassificationThresholds,
}

impl<'a> Scorer<'a> {
    pub fn new(lexicon: &'a RuleLexicon) -> Self {
        Self {
            lexicon,
            constants: RuleConstants::default(),
            thresholds: ClassificationThresholds::default(),
        }
    }

    pub fn with_constants(mut self, constants: RuleConstants) -> Self {
        self.constants = constants;
        self
    }

    pub fn with_thresholds(mut self, thresholds: ClassificationThresholds) -> Self {
        self.thresholds = thresholds;
        self
    }

    pub fn thresholds(&self) -> &ClassificationThresholds {
        &self.thresholds
    }

    fn in_lexicon(&self, lower: &str) -> bool {
        self.lexicon.valence(lower).is_some()
    }

    fn is_negator(&self, lower: &str) -> bool {
        self.lexicon.tables().is_negation(lower) || lower.contains("n't")
    }

    fn booster_scalar(&self, word: &str, lower: &str, valence: f64, cap_diff: bool) -> f64 {
        let Some(&b) = self.lexicon.tables().boosters.get(lower) else {
            return 0.0;
        };
        let mut scalar = if valence < 0.0 { -b } else { b };
        if cap_diff && is_upper(word) {
            if valence > 0.0 {
                scalar += self.constants.caps_increment;
            } else {
                scalar -= self.constants.caps_increment;
            }
        }
        scalar
    }

    fn negation_check(&self, mut valence: f64, l: &[String], start: usize, i: usize) -> f64 {
        let c = &self.constants;
        let so_this = |w: &str| w == "so" || w == "this";
        match start {
            0 => {
                if self.is_negator(&l[i - 1]) {
                    valence *= c.negation_scalar;
                }
            }
            1 => {
                if l[i - 2] == "never" && so_this(&l[i - 1]) {
                    valence *= c.never_so;
                } else if l[i - 2] == "without" && l[i - 1] == "doubt" {
                } else if self.is_negator(&l[i - 2]) {
                    valence *= c.negation_scalar;
                }
            }
            _ => {
                if (l[i - 3] == "never" && so_this(&l[i - 2])) || so_this(&l[i - 1]) {
                    valence *= c.never_so;
                } else if l[i - 3] == "without" && (l[i - 2] == "doubt" || l[i - 1] == "doubt") {
                } else if self.is_negator(&l[i - 3]) {
                    valence *= c.negation_scalar;
                }
            }
        }
        valence
    }

    /// Fixed-valence phrases around position `i` (which is at least 3) and
    /// multi-word boosters just before it.
    fn idiom_check(&self, mut valence: f64, l: &[String], i: usize) -> f64 {
        let tables = self.lexicon.tables();
        let one_zero = format!("{} {}", l[i - 1], l[i]);
        let two_one_zero = format!("{} {} {}", l[i - 2], l[i - 1], l[i]);
        let two_one = format!("{} {}", l[i - 2], l[i - 1]);
        let three_two_one = format!("{} {} {}", l[i - 3], l[i - 2], l[i - 1]);
        let three_two = format!("{} {}", l[i - 3], l[i - 2]);
        for seq in [&one_zero, &two_one_zero, &two_one, &three_two_one, &three_two] {
            if let Some(&v) = tables.special_cases.get(seq.as_str()) {
                valence = v;
                break;
            }
        }
        if l.len() - 1 > i {
            if let Some(&v) = tables.special_cases.get(&format!("{} {}", l[i], l[i + 1])) {
                valence = v;
            }
        }
        if l.len() - 1 > i + 1 {
            if let Some(&v) = tables
                .special_cases
                .get(&format!("{} {} {}", l[i], l[i + 1], l[i + 2]))
            {
                valence = v;
            }
        }
        for gram in [&three_two_one, &three_two, &two_one] {
            if let Some(&b) = tables.boosters.get(gram.as_str()) {
                valence += b;
            }
        }
        valence
    }

    fn least_check(&self, valence: f64, l: &[String], i: usize) -> f64 {
        if i > 0 && l[i - 1] == "least" && !self.in_lexicon(&l[i - 1]) {
            if i > 1 {
                if l[i - 2] != "at" && l[i - 2] != "very" {
                    return valence * self.constants.negation_scalar;
                }
                return valence;
            }
            return valence * self.constants.negation_scalar;
        }
        valence
    }

    fn token_valence(&self, s: &Sentence<'_>, i: usize) -> f64 {
        let c = &self.constants;
        let l = &s.lower;
        let Some(base) = self.lexicon.valence(&l[i]) else {
            return 0.0;
        };
        let mut valence = base;
        if l[i] == "no" && i + 1 < l.len() && self.in_lexicon(&l[i + 1]) {
            valence = 0.0;
        }
        if (i > 0 && l[i - 1] == "no")
            || (i > 1 && l[i - 2] == "no")
            || (i > 2 && l[i - 3] == "no" && (l[i - 1] == "or" || l[i - 1] == "nor"))
        {
            valence = base * c.negation_scalar;
        }
        if s.cap_diff && is_upper(s.words[i]) {
            if valence > 0.0 {
                valence += c.caps_increment;
            } else {
                valence -= c.caps_increment;
            }
        }
        for start in 0..3 {
            if i > start && !self.in_lexicon(&l[i - start - 1]) {
                let mut scalar = self.booster_scalar(s.words[i - start - 1], &l[i - start - 1], valence, s.cap_diff);
                if scalar != 0.0 {
                    scalar *= c.booster_damping[start];
                }
                valence += scalar;
                valence = self.negation_check(valence, l, start, i);
                if start == 2 && self.lexicon.tables().phrase_rules {
                    valence = self.idiom_check(valence, l, i);
                }
            }
        }
        self.least_check(valence, l, i)
    }

    /// Mutated valence of every token, zero for unscored ones.
    pub fn token_valences(&self, text: &str) -> Vec<f64> {
        let words = scoring_tokens(text);
        let sentence = Sentence {
            cap_diff: cap_differential(&words),
            lower: words.iter().map(|w| w.to_lowercase()).collect(),
            words,
        };
        let l = &sentence.lower;
        let tables = self.lexicon.tables();
        let mut out: Vec<f64> = (0..l.len())
            .map(|i| {
                if tables.is_booster(&l[i])
                    || (tables.phrase_rules && l[i] == "kind" && l.get(i + 1).is_some_and(|n| n == "of"))
                {
                    0.0
                } else {
                    self.token_valence(&sentence, i)
                }
            })
            .collect();
        if let Some(b) = l.iter().position(|w| w == "but") {
            for (k, v) in out.iter_mut().enumerate() {
                if k < b {
                    *v *= self.constants.but_before;
                } else if k > b {
                    *v *= self.constants.but_after;
                }
            }
        }
        out
    }

    /// Emphasis added by exclamation and question marks.
    pub fn punctuation_amplifier(&self, text: &str) -> f64 {
        let c = &self.constants;
        let ep = text.matches('!').count().min(c.exclamation_cap);
        let qm = text.matches('?').count();
        let q = match qm {
            0 | 1 => 0.0,
            2 | 3 => qm as f64 * c.question,
            _ => c.question_cap,
        };
        ep as f64 * c.exclamation + q
    }

    fn from_valences(&self, valences: &[f64], text: &str) -> ScoreResult {
        if valences.is_empty() {
            return ScoreResult {
                pos: 0.0,
                neg: 0.0,
                neu: 0.0,
                compound: 0.0,
                intensity: 0.0,
                label: classify(0.0, &self.thresholds),
            };
        }
        let amp = self.punctuation_amplifier(text);
        let mut sum: f64 = valences.iter().sum();
        if sum > 0.0 {
            sum += amp;
        } else if sum < 0.0 {
            sum -= amp;
        }
        let compound = normalize(sum, self.constants.alpha);

        let (mut pos_sum, mut neg_sum, mut neu) = (0.0, 0.0, 0usize);
        for &v in valences {
            if v > 0.0 {
                pos_sum += v + 1.0;
            }
            if v < 0.0 {
                neg_sum += v - 1.0;
            }
            if v == 0.0 {
                neu += 1;
            }
        }
        if pos_sum > neg_sum.abs() {
            pos_sum += amp;
        } else if pos_sum < neg_sum.abs() {
            neg_sum -= amp;
        }
        let total = pos_sum + neg_sum.abs() + neu as f64;

        let abs_sum: f64 = valences.iter().map(|v| v.abs()).sum();
        let intensity = if abs_sum > 0.0 {
            normalize(abs_sum + amp, self.constants.alpha)
        } else {
            0.0
        };
        ScoreResult {
            pos: (pos_sum / total).abs(),
            neg: (neg_sum / total).abs(),
            neu: (neu as f64 / total).abs(),
            compound,
            intensity,
            label: classify(compound, &self.thresholds),
        }
    }

    /// Full result: proportions, compound, intensity and label.
    pub fn analyze(&self, text: &str) -> ScoreResult {
        self.from_valences(&self.token_valences(text), text)
    }

    pub fn intensity(&self, text: &str) -> f64 {
        self.analyze(text).intensity
    }
}

pub fn score(text: &str, lexicon: &RuleLexicon) -> ScoreResult {
    Scorer::new(lexicon).analyze(text)
}

pub fn intensity(text: &str, lexicon: &RuleLexicon) -> f64 {
    Scorer::new(lexicon).intensity(text)
}
