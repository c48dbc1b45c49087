//! Truncated SVD of the PPMI matrix into dense word vectors.
//!
//! Small matrices are factored densely. Larger ones go through seeded
//! randomized subspace iteration: a Gaussian sketch of the range, a few
//! power iterations with re-orthonormalisation, then an exact SVD of the
//! projected `k x n` matrix.

use std::io::Write;

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::cooccur::{PpmiMatrix, Vocabulary};
use crate::error::{Error, Result};
use crate::sparse::CsrMatrix;

/// `|V| x d` word vectors, row `i` belongs to vocabulary word `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingMatrix {
    rows: usize,
    dim: usize,
    data: Vec<f64>,
}

impl EmbeddingMatrix {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let dim = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: bad.len(),
            });
        }
        let data: Vec<f64> = rows.into_iter().flatten().collect();
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("embedding contains NaN or Inf".into()));
        }
        Ok(Self {
            rows: if dim == 0 { 0 } else { data.len() / dim },
            dim,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    /// Writes `word<TAB>v1<TAB>...<TAB>vd` lines.
    pub fn write_tsv<W: Write>(&self, vocab: &Vocabulary, mut out: W) -> std::io::Result<()> {
        for i in 0..self.rows {
            write!(out, "{}", vocab.word(i))?;
            for v in self.row(i) {
                write!(out, "\t{v}")?;
            }
            writeln!(out)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SvdOptions {
    pub dim: usize,
    pub seed: u64,
    /// Extra sketch columns beyond `dim` for the randomized path.
    pub oversample: usize,
    pub power_iters: usize,
    /// Matrices with at most this many rows or columns are factored densely.
    pub dense_threshold: usize,
    /// Iteration budget handed to the dense SVD routine (0 = until convergence).
    pub max_iter: usize,
    /// Word vectors are `U * S^weight`; 0 gives the bare left singular vectors.
    pub weight_exponent: f64,
}

impl SvdOptions {
    pub fn new(dim: usize, seed: u64) -> Self {
        Self {
            dim,
            seed,
            oversample: 20,
            power_iters: 6,
            dense_threshold: 400,
            max_iter: 0,
            weight_exponent: 0.0,
        }
    }
}

/// Top singular triplets, singular values in descending order.
#[derive(Debug, Clone)]
pub struct SvdFactors {
    pub u: DMatrix<f64>,
    pub singular_values: Vec<f64>,
    pub v: DMatrix<f64>,
}

impl SvdFactors {
    pub fn reconstruct(&self) -> DMatrix<f64> {
        let s = DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(&self.singular_values));
        &self.u * s * self.v.transpose()
    }
}

fn validate(matrix: &CsrMatrix<f64>, opts: &SvdOptions) -> Result<()> {
    let rank_cap = matrix.nrows().min(matrix.ncols());
    if opts.dim == 0 || opts.dim > rank_cap {
        return Err(Error::InvalidParameter(format!(
            "embedding dimension must lie in 1..={rank_cap}, got {}",
            opts.dim
        )));
    }
    if !(0.0..=1.0).contains(&opts.weight_exponent) {
        return Err(Error::InvalidParameter(format!(
            "singular value weight exponent must lie in [0, 1], got {}",
            opts.weight_exponent
        )));
    }
    Ok(())
}

fn dense_svd(m: DMatrix<f64>, max_iter: usize) -> Result<(DMatrix<f64>, Vec<f64>, DMatrix<f64>)> {
    let svd = nalgebra::SVD::try_new(m, true, true, f64::EPSILON, max_iter)
        .ok_or(Error::NoConvergence { max_iter })?;
    let u = svd.u.expect("u requested");
    let vt = svd.v_t.expect("v_t requested");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| {
        svd.singular_values[b]
            .total_cmp(&svd.singular_values[a])
            .then(a.cmp(&b))
    });
    let u = DMatrix::from_fn(u.nrows(), order.len(), |i, j| u[(i, order[j])]);
    let v = DMatrix::from_fn(vt.ncols(), order.len(), |i, j| vt[(order[j], i)]);
    let s = order.iter().map(|&k| svd.singular_values[k]).collect();
    Ok((u, s, v))
}

fn orthonormalize(y: DMatrix<f64>) -> DMatrix<f64> {
    y.qr().q()
}

/// Each column of `u` is flipped so its largest-magnitude entry is positive,
/// with `v` flipped alongside. Makes the factorisation reproducible.
fn fix_signs(u: &mut DMatrix<f64>, v: &mut DMatrix<f64>) {
    for j in 0..u.ncols() {
        let mut best = 0usize;
        for i in 0..u.nrows() {
            if u[(i, j)].abs() > u[(best, j)].abs() {
                best = i;
            }
        }
        if u[(best, j)] < 0.0 {
            u.column_mut(j).neg_mut();
            v.column_mut(j).neg_mut();
        }
    }
}

/// Top-`opts.dim` singular triplets of a sparse matrix.
pub fn truncated_svd_factors(matrix: &CsrMatrix<f64>, opts: &SvdOptions) -> Result<SvdFactors> {
    validate(matrix, opts)?;
    let (m, n) = (matrix.nrows(), matrix.ncols());
    let d = opts.dim;
    let k = (d + opts.oversample).min(m.min(n));

    let (mut u, s, mut v) = if m.min(n) <= opts.dense_threshold || k == m.min(n) {
        dense_svd(matrix.to_dense(), opts.max_iter)?
    } else {
        let transposed = matrix.transpose();
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let omega = DMatrix::from_fn(n, k, |_, _| StandardNormal.sample(&mut rng));
        let mut q = orthonormalize(matrix.mul_dense(&omega));
        for _ in 0..opts.power_iters {
            let z = orthonormalize(transposed.mul_dense(&q));
            q = orthonormalize(matrix.mul_dense(&z));
        }
        // B = Q^T A, formed as (A^T Q)^T.
        let b = transposed.mul_dense(&q).transpose();
        let (ub, s, v) = dense_svd(b, opts.max_iter)?;
        (q * ub, s, v)
    };

    u = u.columns(0, d).into_owned();
    v = v.columns(0, d).into_owned();
    fix_signs(&mut u, &mut v);
    Ok(SvdFactors {
        u,
        singular_values: s[..d].to_vec(),
        v,
    })
}

/// Word vectors from the top-`d` left singular subspace of the PPMI matrix.
pub fn truncated_svd(ppmi: &PpmiMatrix, d: usize, rng_seed: u64) -> Result<EmbeddingMatrix> {
    truncated_svd_with(ppmi, &SvdOptions::new(d, rng_seed))
}

pub fn truncated_svd_with(ppmi: &PpmiMatrix, opts: &SvdOptions) -> Result<EmbeddingMatrix> {
    let f = truncated_svd_factors(ppmi.as_csr(), opts)?;
    let weights: Vec<f64> = f
        .singular_values
        .iter()
        .map(|s| if opts.weight_exponent == 0.0 { 1.0 } else { s.powf(opts.weight_exponent) })
        .collect();
    let rows = (0..f.u.nrows())
        .map(|i| (0..opts.dim).map(|j| f.u[(i, j)] * weights[j]).collect())
        .collect();
    EmbeddingMatrix::from_rows(rows)
}
