//! Rank over the rationals and Smith invariants over the integers.
//!
//! Both run on `i128` with checked arithmetic first and restart on
//! `BigInt` when an intermediate value overflows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::Matrix;

trait Scalar: Clone + PartialEq + std::fmt::Debug {
    fn from_i64(x: i64) -> Self;
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn abs(&self) -> Self;
    fn lt(&self, other: &Self) -> bool;
    fn mul_sub(a: &Self, b: &Self, c: &Self, d: &Self) -> Option<Self>;
    fn exact_div(&self, d: &Self) -> Self;
    fn div_floor(&self, d: &Self) -> Self;
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self>;
    fn add(&self, x: &Self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Scalar for i128 {
    fn from_i64(x: i64) -> Self {
        x as i128
    }
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn abs(&self) -> Self {
        i128::abs(*self)
    }
    fn lt(&self, other: &Self) -> bool {
        self < other
    }
    fn mul_sub(a: &Self, b: &Self, c: &Self, d: &Self) -> Option<Self> {
        a.checked_mul(*b)?.checked_sub(c.checked_mul(*d)?)
    }
    fn exact_div(&self, d: &Self) -> Self {
        debug_assert_eq!(self % d, 0);
        self / d
    }
    fn div_floor(&self, d: &Self) -> Self {
        Integer::div_floor(self, d)
    }
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*x)?)
    }
    fn add(&self, x: &Self) -> Option<Self> {
        self.checked_add(*x)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for BigInt {
    fn from_i64(x: i64) -> Self {
        BigInt::from(x)
    }
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn lt(&self, other: &Self) -> bool {
        self < other
    }
    fn mul_sub(a: &Self, b: &Self, c: &Self, d: &Self) -> Option<Self> {
        Some(a * b - c * d)
    }
    fn exact_div(&self, d: &Self) -> Self {
        self / d
    }
    fn div_floor(&self, d: &Self) -> Self {
        Integer::div_floor(self, d)
    }
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        Some(self - q * x)
    }
    fn add(&self, x: &Self) -> Option<Self> {
        Some(self + x)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

fn load<T: Scalar>(m: &Matrix) -> Vec<Vec<T>> {
    (0..m.rows()).map(|r| m.row(r).iter().map(|&x| T::from_i64(x)).collect()).collect()
}

/// Fraction-free Gaussian elimination; `None` on overflow.
fn bareiss_rank<T: Scalar>(m: &Matrix) -> Option<usize> {
    let mut a: Vec<Vec<T>> = load(m);
    let (rows, cols) = (m.rows(), m.cols());
    let mut prev = T::from_i64(1);
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for k in c + 1..cols {
                let v = T::mul_sub(&a[rank][c], &a[r][k], &a[r][c], &a[rank][k])?;
                a[r][k] = v.exact_div(&prev);
            }
            a[r][c] = T::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    Some(rank)
}

/// Rank of an integer matrix over the rationals.
pub fn rank_rational(m: &Matrix) -> usize {
    bareiss_rank::<i128>(m).unwrap_or_else(|| {
        log::debug!("rational rank fell back to big integers");
        bareiss_rank::<BigInt>(m).expect("big integers do not overflow")
    })
}

/// Nonzero diagonal of the Smith form, without transforms; `None` on overflow.
fn smith<T: Scalar>(m: &Matrix) -> Option<Vec<T>> {
    let mut a: Vec<Vec<T>> = load(m);
    let (rows, cols) = (m.rows(), m.cols());
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: nonzero entry of least absolute value
        let mut best: Option<(usize, usize)> = None;
        for r in t..rows {
            for c in t..cols {
                if !a[r][c].is_zero() && best.is_none_or(|(br, bc)| a[r][c].abs().lt(&a[br][bc].abs())) {
                    best = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = best else { break };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }
        let mut clean = true;
        for r in t + 1..rows {
            if !a[r][t].is_zero() {
                let q = a[r][t].div_floor(&a[t][t]);
                for c in t..cols {
                    let v = a[r][c].sub_mul(&q, &a[t][c])?;
                    a[r][c] = v;
                }
                clean &= a[r][t].is_zero();
            }
        }
        for c in t + 1..cols {
            if !a[t][c].is_zero() {
                let q = a[t][c].div_floor(&a[t][t]);
                for r in t..rows {
                    let v = a[r][c].sub_mul(&q, &a[r][t])?;
                    a[r][c] = v;
                }
                clean &= a[t][c].is_zero();
            }
        }
        if !clean {
            continue;
        }
        // pivot must divide the rest; otherwise fold an offending row in
        let mut offender = None;
        'find: for r in t + 1..rows {
            for c in t + 1..cols {
                if !a[r][c].is_zero() {
                    let q = a[r][c].div_floor(&a[t][t]);
                    if !a[r][c].sub_mul(&q, &a[t][t])?.is_zero() {
                        offender = Some(r);
                        break 'find;
                    }
                }
            }
        }
        if let Some(r) = offender {
            for c in t..cols {
                let v = a[t][c].add(&a[r][c])?;
                a[t][c] = v;
            }
            continue;
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    Some(diag)
}

/// Nonzero invariant factors `d_1 | d_2 | ...` of an integer matrix.
pub fn smith_invariants(m: &Matrix) -> Vec<BigInt> {
    match smith::<i128>(m) {
        Some(d) => d.iter().map(Scalar::to_big).collect(),
        None => {
            log::debug!("Smith form fell back to big integers");
            smith::<BigInt>(m).expect("big integers do not overflow")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn smith_of_small_matrices() {
        let m = Matrix::from_rows(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], 3);
        assert_eq!(smith_invariants(&m), big(&[2, 6, 12]));
        let m = Matrix::from_rows(vec![vec![2, 0], vec![0, 3]], 2);
        assert_eq!(smith_invariants(&m), big(&[1, 6]));
        assert_eq!(smith_invariants(&Matrix::zeros(2, 3)), big(&[]));
    }

    #[test]
    fn rational_rank() {
        let m = Matrix::from_rows(vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]], 3);
        assert_eq!(rank_rational(&m), 2);
        assert_eq!(rank_rational(&Matrix::identity(4)), 4);
        assert_eq!(rank_rational(&Matrix::zeros(0, 3)), 0);
    }

    #[test]
    fn big_fallback_agrees() {
        let big_entry = i64::MAX / 3;
        let m = Matrix::from_rows(
            vec![vec![big_entry, big_entry - 1, 7], vec![big_entry - 5, big_entry, 3], vec![1, 2, big_entry]],
            3,
        );
        assert_eq!(rank_rational(&m), bareiss_rank::<BigInt>(&m).unwrap());
        let d = smith_invariants(&m);
        let e = smith::<BigInt>(&m).unwrap();
        assert_eq!(d, e);
        assert_eq!(d.len(), 3);
    }
}
