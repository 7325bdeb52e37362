use crate::error::{Error, Result};

use super::Matrix;

/// The prime field with `p` elements; values are kept in `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrimeCharacteristic(p.to_string()));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn from_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.p - a) % self.p
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero");
        let (mut base, mut e, mut acc) = (a % self.p, self.p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        acc
    }

    pub fn reduce_matrix(&self, m: &Matrix) -> Vec<Vec<u64>> {
        (0..m.rows()).map(|r| m.row(r).iter().map(|&x| self.from_i64(x)).collect()).collect()
    }

    pub fn rank(&self, m: &Matrix) -> usize {
        self.echelon(&self.reduce_matrix(m), m.cols()).rank()
    }

    /// Reduced row echelon form of `rows` (each of length `cols`).
    pub fn echelon(&self, rows: &[Vec<u64>], cols: usize) -> RowEchelon {
        let mut e = RowEchelon::new(*self, cols);
        for r in rows {
            e.insert(r.clone());
        }
        e
    }

    /// Basis of `{x : M x = 0}` for `M` given by rows.
    pub fn nullspace(&self, rows: &[Vec<u64>], cols: usize) -> Vec<Vec<u64>> {
        let e = self.echelon(rows, cols);
        let free: Vec<usize> = (0..cols).filter(|c| !e.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![0u64; cols];
                x[f] = 1;
                for (row, &pc) in e.rows.iter().zip(&e.pivots) {
                    x[pc] = self.neg(row[f]);
                }
                x
            })
            .collect()
    }

    /// Coefficients `c` with `sum c_i basis_i = v`, free variables set to 0.
    pub fn solve_combination(&self, basis: &[Vec<u64>], v: &[u64]) -> Option<Vec<u64>> {
        let k = basis.len();
        let dim = v.len();
        // augmented system: one row per coordinate, columns are the basis
        // vectors followed by v
        let mut a: Vec<Vec<u64>> = (0..dim)
            .map(|r| basis.iter().map(|b| b[r]).chain(std::iter::once(v[r])).collect())
            .collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        for c in 0..k {
            let Some(p) = (row..dim).find(|&r| a[r][c] != 0) else { continue };
            a.swap(row, p);
            let inv = self.inv(a[row][c]);
            for x in a[row].iter_mut() {
                *x = self.mul(*x, inv);
            }
            for r in 0..dim {
                if r != row && a[r][c] != 0 {
                    let f = a[r][c];
                    let pivot_row = a[row].clone();
                    for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                        *x = self.sub(*x, self.mul(f, *y));
                    }
                }
            }
            pivots.push(c);
            row += 1;
        }
        if a[row..].iter().any(|r| r[k] != 0) {
            return None;
        }
        let mut c = vec![0u64; k];
        for (r, &pc) in pivots.iter().enumerate() {
            c[pc] = a[r][k];
        }
        Some(c)
    }

    pub fn mat_vec_row(&self, v: &[u64], m: &[Vec<u64>]) -> Vec<u64> {
        let cols = m.first().map_or(0, |r| r.len());
        let mut out = vec![0u64; cols];
        for (a, row) in v.iter().zip(m) {
            if *a == 0 {
                continue;
            }
            for (o, x) in out.iter_mut().zip(row) {
                *o = (*o + a * x) % self.p;
            }
        }
        out
    }
}

/// An incrementally maintained reduced row echelon basis of a subspace.
#[derive(Debug, Clone)]
pub struct RowEchelon {
    field: PrimeField,
    cols: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl RowEchelon {
    pub fn new(field: PrimeField, cols: usize) -> Self {
        RowEchelon { field, cols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` against the current basis.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let f = self.field;
        let mut v = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if c != 0 {
                for (x, y) in v.iter_mut().zip(row) {
                    *x = f.sub(*x, f.mul(c, *y));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v` to the span; returns whether the span grew.
    pub fn insert(&mut self, v: Vec<u64>) -> bool {
        let f = self.field;
        let mut v = self.reduce(&v);
        let Some(pc) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(v[pc]);
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for row in self.rows.iter_mut() {
            let c = row[pc];
            if c != 0 {
                for (x, y) in row.iter_mut().zip(&v) {
                    *x = f.sub(*x, f.mul(c, *y));
                }
            }
        }
        let pos = self.pivots.partition_point(|&p| p < pc);
        self.rows.insert(pos, v);
        self.pivots.insert(pos, pc);
        true
    }

    /// Coefficients `c` with `sum c_i row_i = v`, if `v` is in the span.
    pub fn coordinates(&self, v: &[u64]) -> Option<Vec<u64>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&pc| v[pc]).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composite() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(5).is_ok());
    }

    #[test]
    fn inverses() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }

    #[test]
    fn rank_depends_on_p() {
        let m = Matrix::from_rows(vec![vec![1, 1], vec![1, -1]], 2);
        assert_eq!(PrimeField::new(2).unwrap().rank(&m), 1);
        assert_eq!(PrimeField::new(3).unwrap().rank(&m), 2);
    }

    #[test]
    fn nullspace_is_killed() {
        let f = PrimeField::new(3).unwrap();
        let rows = vec![vec![1, 2, 0, 1], vec![0, 1, 1, 2]];
        let ns = f.nullspace(&rows, 4);
        assert_eq!(ns.len(), 2);
        for x in ns {
            for r in &rows {
                let dot = r.iter().zip(&x).fold(0, |a, (p, q)| f.add(a, f.mul(*p, *q)));
                assert_eq!(dot, 0);
            }
        }
    }

    #[test]
    fn coordinates_round_trip() {
        let f = PrimeField::new(5).unwrap();
        let e = f.echelon(&[vec![1, 2, 3], vec![0, 1, 4]], 3);
        let v = vec![2, 2, 3];
        let c = e.coordinates(&v).unwrap();
        assert_eq!(f.mat_vec_row(&c, e.rows()), v);
        assert!(e.coordinates(&[0, 0, 1]).is_none());
    }

    #[test]
    fn solve_combination_in_original_basis() {
        let f = PrimeField::new(3).unwrap();
        let basis = vec![vec![1, 1, 0], vec![0, 1, 1]];
        assert_eq!(f.solve_combination(&basis, &[2, 0, 1]), Some(vec![2, 1]));
        assert_eq!(f.solve_combination(&basis, &[1, 0, 0]), None);
    }
}
