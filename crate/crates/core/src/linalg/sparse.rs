//! Row-compressed complex sparse matrices for operators that are too large to
//! hold densely but have only a handful of entries per row.

use std::collections::BTreeMap;

use super::{CMatrix, C64};

#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    nrows: usize,
    ncols: usize,
    // Each row sorted by column, no explicit zeros.
    rows: Vec<Vec<(usize, C64)>>,
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self {
            nrows,
            ncols,
            rows: vec![Vec::new(); nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diagonal(&vec![C64::new(1.0, 0.0); n])
    }

    pub fn from_diagonal(diag: &[C64]) -> Self {
        let rows = diag
            .iter()
            .enumerate()
            .map(|(i, &d)| if d == C64::new(0.0, 0.0) { Vec::new() } else { vec![(i, d)] })
            .collect();
        Self {
            nrows: diag.len(),
            ncols: diag.len(),
            rows,
        }
    }

    /// Builds from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets(nrows: usize, ncols: usize, triplets: impl IntoIterator<Item = (usize, usize, C64)>) -> Self {
        let mut acc: Vec<BTreeMap<usize, C64>> = vec![BTreeMap::new(); nrows];
        for (r, c, v) in triplets {
            assert!(r < nrows && c < ncols, "triplet ({r}, {c}) out of bounds");
            *acc[r].entry(c).or_insert(C64::new(0.0, 0.0)) += v;
        }
        Self::from_row_maps(nrows, ncols, acc)
    }

    fn from_row_maps(nrows: usize, ncols: usize, acc: Vec<BTreeMap<usize, C64>>) -> Self {
        let rows = acc
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, v)| *v != C64::new(0.0, 0.0)).collect())
            .collect();
        Self { nrows, ncols, rows }
    }

    pub fn from_dense(m: &CMatrix) -> Self {
        let triplets = (0..m.nrows()).flat_map(|r| (0..m.ncols()).map(move |c| (r, c, m[(r, c)])));
        Self::from_triplets(m.nrows(), m.ncols(), triplets)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn row(&self, r: usize) -> &[(usize, C64)] {
        &self.rows[r]
    }

    pub fn get(&self, r: usize, c: usize) -> C64 {
        self.rows[r]
            .binary_search_by_key(&c, |&(col, _)| col)
            .map(|idx| self.rows[r][idx].1)
            .unwrap_or(C64::new(0.0, 0.0))
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, C64)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |&(c, v)| (r, c, v)))
    }

    pub fn to_dense(&self) -> CMatrix {
        let mut m = CMatrix::zeros(self.nrows, self.ncols);
        for (r, c, v) in self.triplets() {
            m[(r, c)] = v;
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        Self::from_triplets(self.ncols, self.nrows, self.triplets().map(|(r, c, v)| (c, r, v.conj())))
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::from_triplets(self.nrows, self.ncols, self.triplets().map(|(r, c, v)| (r, c, v * s)))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols), "shape mismatch in sparse add");
        Self::from_triplets(self.nrows, self.ncols, self.triplets().chain(other.triplets()))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ncols, other.nrows, "shape mismatch in sparse mul");
        let acc = self
            .rows
            .iter()
            .map(|row| {
                let mut out: BTreeMap<usize, C64> = BTreeMap::new();
                for &(k, a) in row {
                    for &(c, b) in &other.rows[k] {
                        *out.entry(c).or_insert(C64::new(0.0, 0.0)) += a * b;
                    }
                }
                out
            })
            .collect();
        Self::from_row_maps(self.nrows, other.ncols, acc)
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        self.mul(other).add(&other.mul(self))
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.triplets().fold(0.0, |acc, (_, _, v)| acc.max(v.norm()))
    }

    pub fn frobenius(&self) -> f64 {
        self.triplets().map(|(_, _, v)| v.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Keeps only entries whose row and column are both selected.
    pub fn compress(&self, keep: &[bool]) -> Self {
        assert_eq!(keep.len(), self.nrows);
        assert_eq!(keep.len(), self.ncols);
        let index: Vec<Option<usize>> = keep
            .iter()
            .scan(0usize, |next, &k| {
                Some(if k {
                    *next += 1;
                    Some(*next - 1)
                } else {
                    None
                })
            })
            .collect();
        let dim = keep.iter().filter(|k| **k).count();
        let triplets = self
            .triplets()
            .filter_map(|(r, c, v)| Some((index[r]?, index[c]?, v)));
        Self::from_triplets(dim, dim, triplets)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, max_abs};

    #[test]
    fn matches_dense_arithmetic() {
        let a = CMatrix::from_row_slice(3, 3, &[
            c(1.0, 0.0), c(0.0, 2.0), c(0.0, 0.0),
            c(0.0, 0.0), c(3.0, -1.0), c(1.0, 1.0),
            c(-2.0, 0.0), c(0.0, 0.0), c(0.5, 0.0),
        ]);
        let b = a.adjoint() * c(0.0, 1.0) + CMatrix::identity(3, 3);
        let sa = SparseMatrix::from_dense(&a);
        let sb = SparseMatrix::from_dense(&b);
        assert!(max_abs(&(sa.mul(&sb).to_dense() - &a * &b)) < 1e-14);
        assert!(max_abs(&(sa.anticommutator(&sb).to_dense() - (&a * &b + &b * &a))) < 1e-14);
        assert!(max_abs(&(sa.adjoint().to_dense() - a.adjoint())) == 0.0);
        let keep = [true, false, true];
        let compressed = sa.compress(&keep).to_dense();
        assert_eq!(compressed[(1, 0)], a[(2, 0)]);
        assert_eq!(compressed[(0, 1)], a[(0, 2)]);
    }
}
