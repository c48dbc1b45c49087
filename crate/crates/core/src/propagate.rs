//! Seeded label propagation by random walks with restart.
//!
//! A walker at node `u` follows an edge with probability `damping`, choosing
//! neighbours in proportion to edge weight, and otherwise jumps back to a
//! uniformly chosen seed. Nodes without positive-weight edges send all their
//! mass back to the seeds. A word's proximity to a pole is its stationary
//! visit probability under the walk anchored at that pole's seeds.

use std::collections::HashSet;
use std::io::Write;

use log::warn;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::LexicalGraph;

/// Two disjoint, non-empty, duplicate-free lists of seed words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedSet {
    positive: Vec<String>,
    negative: Vec<String>,
}

fn dedup(words: impl IntoIterator<Item = String>) -> Vec<String> {
    let mut seen = HashSet::new();
    words
        .into_iter()
        .map(|w| w.trim().to_lowercase())
        .filter(|w| !w.is_empty() && seen.insert(w.clone()))
        .collect()
}

impl SeedSet {
    pub fn new<I, J, S, T>(positive: I, negative: J) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        J: IntoIterator<Item = T>,
        S: Into<String>,
        T: Into<String>,
    {
        let positive = dedup(positive.into_iter().map(Into::into));
        let negative = dedup(negative.into_iter().map(Into::into));
        if positive.is_empty() || negative.is_empty() {
            return Err(Error::Config("both seed lists must be non-empty".into()));
        }
        let pos: HashSet<&String> = positive.iter().collect();
        let shared: Vec<String> = negative.iter().filter(|w| pos.contains(w)).cloned().collect();
        if !shared.is_empty() {
            return Err(Error::Config(format!(
                "seed lists overlap: {}",
                shared.join(", ")
            )));
        }
        Ok(Self { positive, negative })
    }

    pub fn positive(&self) -> &[String] {
        &self.positive
    }

    pub fn negative(&self) -> &[String] {
        &self.negative
    }

    pub fn contains(&self, word: &str) -> bool {
        self.positive.iter().chain(&self.negative).any(|w| w == word)
    }

    pub fn all(&self) -> impl Iterator<Item = &str> {
        self.positive.iter().chain(&self.negative).map(String::as_str)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WalkParams {
    /// Probability of following an edge rather than restarting.
    pub damping: f64,
    /// Stop once the L1 change between iterates falls below this.
    pub tolerance: f64,
    pub max_iter: usize,
}

impl Default for WalkParams {
    fn default() -> Self {
        Self {
            damping: 0.9,
            tolerance: 1e-6,
            max_iter: 500,
        }
    }
}

impl WalkParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.damping > 0.0 && self.damping < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "damping must lie in (0, 1), got {}",
                self.damping
            )));
        }
        if !(self.tolerance > 0.0) || self.max_iter == 0 {
            return Err(Error::InvalidParameter(
                "tolerance must be positive and max_iter at least 1".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct WalkOutcome {
    /// Stationary visit probability per graph node.
    pub proximity: Vec<f64>,
    pub iterations: usize,
    /// L1 change of the last iteration.
    pub residual: f64,
    pub converged: bool,
    /// Seeds that are not graph nodes.
    pub missing_seeds: Vec<String>,
}

pub fn random_walk_proximity(graph: &LexicalGraph, seeds: &[String], params: &WalkParams) -> Result<WalkOutcome> {
    params.validate()?;
    let n = graph.len();
    let mut present = Vec::new();
    let mut missing = Vec::new();
    for s in seeds {
        match graph.node_of(s) {
            Some(i) if !present.contains(&i) => present.push(i),
            Some(_) => {}
            None => missing.push(s.clone()),
        }
    }
    if present.is_empty() {
        return Err(Error::SeedsMissing { missing });
    }
    if !missing.is_empty() {
        warn!("seed words not in graph: {}", missing.join(", "));
    }

    let mut restart = vec![0.0; n];
    let share = 1.0 / present.len() as f64;
    for &i in &present {
        restart[i] = share;
    }

    let adj = graph.adjacency();
    let out_weight: Vec<f64> = (0..n).map(|i| adj.row(i).1.iter().sum()).collect();
    let beta = params.damping;

    let mut pi = restart.clone();
    let mut next = vec![0.0; n];
    let mut residual = f64::INFINITY;
    let mut iterations = 0;
    let mut converged = false;
    while iterations < params.max_iter {
        iterations += 1;
        let dangling: f64 = (0..n)
            .filter(|&u| out_weight[u] == 0.0)
            .map(|u| pi[u])
            .sum();
        // Gather form over the symmetric adjacency keeps each node's sum in a
        // fixed order regardless of thread count.
        next.par_iter_mut().enumerate().for_each(|(v, slot)| {
            let (cols, vals) = adj.row(v);
            let inflow: f64 = cols
                .iter()
                .zip(vals)
                .map(|(&u, &w)| pi[u as usize] * w / out_weight[u as usize])
                .sum();
            *slot = (1.0 - beta) * restart[v] + beta * (inflow + dangling * restart[v]);
        });
        residual = pi.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        std::mem::swap(&mut pi, &mut next);
        if residual < params.tolerance {
            converged = true;
            break;
        }
    }
    if !converged {
        warn!(
            "random walk stopped at max_iter={} with residual {residual:e}",
            params.max_iter
        );
    }
    Ok(WalkOutcome {
        proximity: pi,
        iterations,
        residual,
        converged,
        missing_seeds: missing,
    })
}

/// `pos / (pos + neg)`, or `None` when the word was never reached.
pub fn polarity(pos_prox: f64, neg_prox: f64) -> Option<f64> {
    let total = pos_prox + neg_prox;
    (total > 0.0).then(|| pos_prox / total)
}

/// Per-word proximities to both poles, in graph node order.
#[derive(Debug, Clone, PartialEq)]
pub struct ProximityTable {
    pub words: Vec<String>,
    pub pos: Vec<f64>,
    pub neg: Vec<f64>,
}

impl ProximityTable {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Writes `word<TAB>pos_prox<TAB>neg_prox<TAB>raw_polarity`; unreached
    /// words get an empty polarity field.
    pub fn write_tsv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for i in 0..self.len() {
            let pol = polarity(self.pos[i], self.neg[i]).map(|p| p.to_string()).unwrap_or_default();
            writeln!(out, "{}\t{}\t{}\t{}", self.words[i], self.pos[i], self.neg[i], pol)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct PoleWalks {
    pub table: ProximityTable,
    pub positive: WalkOutcome,
    pub negative: WalkOutcome,
}

/// Runs the two pole walks concurrently.
pub fn pole_proximities(graph: &LexicalGraph, seeds: &SeedSet, params: &WalkParams) -> Result<PoleWalks> {
    let (pos, neg) = rayon::join(
        || random_walk_proximity(graph, seeds.positive(), params),
        || random_walk_proximity(graph, seeds.negative(), params),
    );
    let (mut positive, mut negative) = (pos?, neg?);
    let table = ProximityTable {
        words: graph.words().to_vec(),
        pos: std::mem::take(&mut positive.proximity),
        neg: std::mem::take(&mut negative.proximity),
    };
    Ok(PoleWalks {
        table,
        positive,
        negative,
    })
}
