//! Independent reference implementations used as test oracles. They favour
//! obviousness over speed and share no code with the library.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashSet};

pub fn is_emoji_base(c: char) -> bool {
    let u = c as u32;
    (0x1F000..=0x1FAFF).contains(&u) || (0x2600..=0x27BF).contains(&u) || u == 0x2B50 || u == 0x2B55
}

fn is_emoji_modifier(c: char) -> bool {
    let u = c as u32;
    u == 0xFE0F || (0x1F3FB..=0x1F3FF).contains(&u) || u == 0x20E3 || (0xE0020..=0xE007F).contains(&u)
}

fn is_regional(c: char) -> bool {
    (0x1F1E6..=0x1F1FF).contains(&(c as u32))
}

/// Character-class tokenizer: runs of alphanumerics (joined across single
/// apostrophes) and emoji sequences are tokens, everything else separates.
pub fn reference_tokenize(text: &str, stopwords: &HashSet<&str>) -> Vec<String> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if is_emoji_base(c) {
            let mut tok = String::from(c);
            i += 1;
            if is_regional(c) && i < chars.len() && is_regional(chars[i]) {
                tok.push(chars[i]);
                i += 1;
            }
            loop {
                if i < chars.len() && is_emoji_modifier(chars[i]) {
                    tok.push(chars[i]);
                    i += 1;
                } else if i + 1 < chars.len() && chars[i] == '\u{200D}' && is_emoji_base(chars[i + 1]) {
                    tok.push(chars[i]);
                    tok.push(chars[i + 1]);
                    i += 2;
                } else {
                    break;
                }
            }
            out.push(tok);
        } else if c.is_alphanumeric() {
            let mut tok = String::new();
            while i < chars.len() {
                let c = chars[i];
                if c.is_alphanumeric() && !is_emoji_base(c) {
                    tok.extend(c.to_lowercase());
                    i += 1;
                } else if (c == '\'' || c == '\u{2019}')
                    && i + 1 < chars.len()
                    && chars[i + 1].is_alphanumeric()
                    && !is_emoji_base(chars[i + 1])
                {
                    tok.push('\'');
                    i += 1;
                } else {
                    break;
                }
            }
            out.push(tok);
        } else {
            i += 1;
        }
    }
    out.retain(|t| !stopwords.contains(t.as_str()));
    out
}

/// Unordered position-pair counts, straight from the definition.
pub fn brute_cooccurrence(docs: &[Vec<String>], vocab: &[String], window: Option<usize>) -> Vec<Vec<u64>> {
    let n = vocab.len();
    let idx = |w: &str| vocab.iter().position(|v| v == w);
    let mut m = vec![vec![0u64; n]; n];
    for d in docs {
        for p in 0..d.len() {
            for q in p + 1..d.len() {
                if let Some(w) = window {
                    if q - p > w {
                        continue;
                    }
                }
                if let (Some(a), Some(b)) = (idx(&d[p]), idx(&d[q])) {
                    if a != b {
                        m[a][b] += 1;
                        m[b][a] += 1;
                    }
                }
            }
        }
    }
    m
}

/// PPMI from a dense count matrix: the joint probability is the pair's share
/// of all unordered pairs and each marginal is the word's share of pair
/// endpoints.
pub fn dense_ppmi(counts: &[Vec<u64>]) -> Vec<Vec<f64>> {
    let n = counts.len();
    let total_pairs: f64 = counts.iter().flatten().map(|&c| c as f64).sum::<f64>() / 2.0;
    let endpoints = 2.0 * total_pairs;
    let marg: Vec<f64> = counts
        .iter()
        .map(|r| r.iter().map(|&c| c as f64).sum::<f64>() / endpoints)
        .collect();
    let mut out = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            if counts[i][j] > 0 {
                let joint = counts[i][j] as f64 / total_pairs;
                out[i][j] = (joint / (marg[i] * marg[j])).ln().max(0.0);
            }
        }
    }
    out
}

/// Words passing both thresholds, by brute counting.
pub fn brute_vocabulary(docs: &[Vec<String>], min_count: u64, max_doc_frac: f64) -> Vec<String> {
    let mut counts: BTreeMap<&str, (u64, u64)> = BTreeMap::new();
    for d in docs {
        let uniq: BTreeSet<&str> = d.iter().map(String::as_str).collect();
        for t in d {
            counts.entry(t).or_default().0 += 1;
        }
        for t in uniq {
            counts.entry(t).or_default().1 += 1;
        }
    }
    counts
        .into_iter()
        .filter(|(_, (c, df))| *c >= min_count && (*df as f64 / docs.len() as f64) <= max_doc_frac)
        .map(|(w, _)| w.to_string())
        .collect()
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, descending.
pub fn jacobi_eigenvalues(a: &[Vec<f64>]) -> Vec<f64> {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = a.to_vec();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[i][j] * m[i][j])
            .sum();
        if off < 1e-22 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if m[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (mkp, mkq) = (m[k][p], m[k][q]);
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let (mpk, mqk) = (m[p][k], m[q][k]);
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| m[i][i]).collect();
    ev.sort_by(|a, b| b.total_cmp(a));
    ev
}

/// Singular values of `a` as square roots of the eigenvalues of `a^T a`.
pub fn singular_values(a: &[Vec<f64>]) -> Vec<f64> {
    let (rows, cols) = (a.len(), a[0].len());
    let ata: Vec<Vec<f64>> = (0..cols)
        .map(|i| (0..cols).map(|j| (0..rows).map(|k| a[k][i] * a[k][j]).sum()).collect())
        .collect();
    jacobi_eigenvalues(&ata).into_iter().map(|e| e.max(0.0).sqrt()).collect()
}

pub fn cosine(u: &[f64], v: &[f64]) -> f64 {
    let dot: f64 = u.iter().zip(v).map(|(a, b)| a * b).sum();
    let nu: f64 = u.iter().map(|a| a * a).sum::<f64>().sqrt();
    let nv: f64 = v.iter().map(|a| a * a).sum::<f64>().sqrt();
    if nu == 0.0 || nv == 0.0 {
        0.0
    } else {
        dot / (nu * nv)
    }
}

/// Each node's `k` most similar other nodes, ties to the lower index.
pub fn brute_knn(vectors: &[Vec<f64>], k: usize) -> Vec<Vec<usize>> {
    (0..vectors.len())
        .map(|i| {
            let mut others: Vec<(f64, usize)> = (0..vectors.len())
                .filter(|&j| j != i)
                .map(|j| (cosine(&vectors[i], &vectors[j]), j))
                .collect();
            others.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap().then(a.1.cmp(&b.1)));
            let mut top: Vec<usize> = others.into_iter().take(k).map(|(_, j)| j).collect();
            top.sort();
            top
        })
        .collect()
}

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
pub fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&x, &y| a[x][col].abs().partial_cmp(&a[y][col].abs()).unwrap())
            .unwrap();
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            for c in col..n {
                a[r][c] -= f * a[col][c];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|c| a[r][c] * x[c]).sum();
        x[r] = (b[r] - s) / a[r][r];
    }
    x
}

/// Stationary distribution of the restart walk on a dense symmetric weight
/// matrix, from `(I - beta P^T - beta s d^T) pi = (1 - beta) s` where `P` is
/// the row-normalised transition matrix and `d` flags dangling nodes.
pub fn stationary_solve(w: &[Vec<f64>], seeds: &[usize], beta: f64) -> Vec<f64> {
    let n = w.len();
    let mut s = vec![0.0; n];
    for &i in seeds {
        s[i] = 1.0 / seeds.len() as f64;
    }
    let deg: Vec<f64> = w.iter().map(|r| r.iter().sum()).collect();
    let mut a = vec![vec![0.0; n]; n];
    for v in 0..n {
        for u in 0..n {
            let p_uv = if deg[u] > 0.0 { w[u][v] / deg[u] } else { 0.0 };
            let dangling = if deg[u] > 0.0 { 0.0 } else { s[v] };
            a[v][u] = if u == v { 1.0 } else { 0.0 } - beta * p_uv - beta * dangling;
        }
    }
    let b: Vec<f64> = s.iter().map(|x| (1.0 - beta) * x).collect();
    solve(a, b)
}

/// Percentile by sorting and interpolating between neighbouring ranks.
pub fn sorted_percentile(values: &[f64], q: f64) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let rank = q * (v.len() - 1) as f64;
    let below = rank.floor() as usize;
    let above = rank.ceil() as usize;
    v[below] + (rank - below as f64) * (v[above] - v[below])
}

pub fn neutral_oracle(pos: &[f64], neg: &[f64], p4: f64) -> Vec<usize> {
    let tp = sorted_percentile(pos, p4);
    let tn = sorted_percentile(neg, p4);
    (0..pos.len()).filter(|&i| pos[i] < tp && neg[i] < tn).collect()
}

pub fn polarised_oracle(pos: &[f64], neg: &[f64], p5: f64) -> (Vec<usize>, Vec<usize>) {
    let delta: Vec<f64> = pos.iter().zip(neg).map(|(p, n)| p - n).collect();
    let hi = sorted_percentile(&delta, 1.0 - p5);
    let lo = sorted_percentile(&delta, p5);
    (
        (0..delta.len()).filter(|&i| delta[i] >= hi).collect(),
        (0..delta.len()).filter(|&i| delta[i] <= lo).collect(),
    )
}

/// Mean PPMI to `a` minus mean PPMI to `b`, evaluated densely.
pub fn eq2_distances(ppmi: &[Vec<f64>], a: &[usize], b: &[usize]) -> Vec<f64> {
    (0..ppmi.len())
        .map(|i| {
            a.iter().map(|&w| ppmi[w][i]).sum::<f64>() / a.len() as f64
                - b.iter().map(|&w| ppmi[w][i]).sum::<f64>() / b.len() as f64
        })
        .collect()
}
