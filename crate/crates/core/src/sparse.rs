//! Compressed sparse row storage used by the count, PPMI and graph matrices.

use nalgebra::DMatrix;
use rayon::prelude::*;

#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix<T> {
    nrows: usize,
    ncols: usize,
    indptr: Vec<usize>,
    indices: Vec<u32>,
    data: Vec<T>,
}

impl<T: Copy> CsrMatrix<T> {
    /// Builds from triplets sorted by (row, col) without duplicates.
    pub fn from_sorted_triplets(nrows: usize, ncols: usize, triplets: &[(u32, u32, T)]) -> Self {
        let mut indptr = vec![0usize; nrows + 1];
        for &(r, _, _) in triplets {
            indptr[r as usize + 1] += 1;
        }
        for i in 0..nrows {
            indptr[i + 1] += indptr[i];
        }
        debug_assert!(triplets
            .windows(2)
            .all(|w| (w[0].0, w[0].1) < (w[1].0, w[1].1)));
        Self {
            nrows,
            ncols,
            indptr,
            indices: triplets.iter().map(|t| t.1).collect(),
            data: triplets.iter().map(|t| t.2).collect(),
        }
    }

    /// Builds from per-row `(col, value)` lists; each list must be sorted by column.
    pub fn from_rows(ncols: usize, rows: Vec<Vec<(u32, T)>>) -> Self {
        let nrows = rows.len();
        let mut indptr = Vec::with_capacity(nrows + 1);
        indptr.push(0);
        let nnz = rows.iter().map(Vec::len).sum();
        let mut indices = Vec::with_capacity(nnz);
        let mut data = Vec::with_capacity(nnz);
        for row in rows {
            for (c, v) in row {
                indices.push(c);
                data.push(v);
            }
            indptr.push(indices.len());
        }
        Self {
            nrows,
            ncols,
            indptr,
            indices,
            data,
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.data.len()
    }

    pub fn row(&self, i: usize) -> (&[u32], &[T]) {
        let (s, e) = (self.indptr[i], self.indptr[i + 1]);
        (&self.indices[s..e], &self.data[s..e])
    }

    pub fn get(&self, i: usize, j: usize) -> Option<T> {
        let (cols, vals) = self.row(i);
        cols.binary_search(&(j as u32)).ok().map(|k| vals[k])
    }

    /// Iterates `(row, col, value)` in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, T)> + '_ {
        (0..self.nrows).flat_map(move |i| {
            let (cols, vals) = self.row(i);
            cols.iter().zip(vals).map(move |(&c, &v)| (i, c as usize, v))
        })
    }

    pub fn map<U: Copy>(&self, f: impl Fn(T) -> U) -> CsrMatrix<U> {
        CsrMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            indptr: self.indptr.clone(),
            indices: self.indices.clone(),
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut rows: Vec<Vec<(u32, T)>> = vec![Vec::new(); self.ncols];
        for (i, j, v) in self.iter() {
            rows[j].push((i as u32, v));
        }
        Self::from_rows(self.nrows, rows)
    }
}

impl CsrMatrix<f64> {
    /// Dense copy; only for small matrices and tests.
    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.nrows, self.ncols);
        for (i, j, v) in self.iter() {
            m[(i, j)] = v;
        }
        m
    }

    pub fn from_dense(m: &DMatrix<f64>) -> Self {
        let rows = (0..m.nrows())
            .map(|i| {
                (0..m.ncols())
                    .filter(|&j| m[(i, j)] != 0.0)
                    .map(|j| (j as u32, m[(i, j)]))
                    .collect()
            })
            .collect();
        Self::from_rows(m.ncols(), rows)
    }

    /// `self * x` for a dense `x`. Each output row is summed serially, so the
    /// result does not depend on the number of worker threads.
    pub fn mul_dense(&self, x: &DMatrix<f64>) -> DMatrix<f64> {
        assert_eq!(self.ncols, x.nrows());
        let k = x.ncols();
        // Row-major copy of x so each sparse entry touches a contiguous slice.
        let xt = x.transpose();
        let xs = xt.as_slice();
        let mut out = vec![0.0; self.nrows * k];
        out.par_chunks_mut(k.max(1))
            .enumerate()
            .for_each(|(i, acc)| {
                let (cols, vals) = self.row(i);
                for (&c, &v) in cols.iter().zip(vals) {
                    let src = &xs[c as usize * k..(c as usize + 1) * k];
                    for (a, s) in acc.iter_mut().zip(src) {
                        *a += v * s;
                    }
                }
            });
        DMatrix::from_row_slice(self.nrows, k, &out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triplets_and_lookup() {
        let m = CsrMatrix::from_sorted_triplets(3, 3, &[(0, 1, 2.0), (1, 0, 2.0), (2, 2, 5.0)]);
        assert_eq!(m.get(0, 1), Some(2.0));
        assert_eq!(m.get(0, 0), None);
        assert_eq!(m.nnz(), 3);
        assert_eq!(m.transpose().get(1, 0), Some(2.0));
    }

    #[test]
    fn sparse_dense_product_matches_dense() {
        let d = DMatrix::from_row_slice(2, 3, &[1.0, 0.0, 2.0, 0.0, 3.0, 0.0]);
        let x = DMatrix::from_row_slice(3, 2, &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        let s = CsrMatrix::from_dense(&d);
        assert_eq!(s.mul_dense(&x), &d * &x);
    }
}
