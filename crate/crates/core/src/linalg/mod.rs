//! Dense integer matrices and the exact algorithms run on them.

mod exact;
mod fp;

pub use exact::{rank_rational, smith_invariants};
pub use fp::{PrimeField, RowEchelon};

use std::fmt;

use serde::Serialize;

/// A dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds from rows; all rows must have length `cols`.
    pub fn from_rows(rows: Vec<Vec<i64>>, cols: usize) -> Self {
        let mut m = Matrix::zeros(rows.len(), cols);
        for (r, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            m.data[r * cols..(r + 1) * cols].copy_from_slice(&row);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Integer product; panics on overflow, which the callers' entries
    /// (bounded by small constants) never reach.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let v = out.get(r, c) + a * other.get(k, c);
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    /// Columns of `self` followed by columns of `other`.
    pub fn hconcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let rows = (0..self.rows)
            .map(|r| self.row(r).iter().chain(other.row(r)).copied().collect())
            .collect();
        Matrix::from_rows(rows, cols)
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Matrix::from_rows(idx.iter().map(|&r| self.row(r).to_vec()).collect(), self.cols)
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        let rows = (0..self.rows).map(|r| idx.iter().map(|&c| self.get(r, c)).collect()).collect();
        Matrix::from_rows(rows, idx.len())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Entries reduced into `0..p`.
    pub fn reduce(&self, p: u64) -> Matrix {
        let p = p as i64;
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.rem_euclid(p)).collect() }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_rows())
    }
}
