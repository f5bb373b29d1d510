//! Dense integer matrices with arbitrary-precision entries.

use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Row-major dense matrix over `BigInt`.
///
/// Zero-sized dimensions are allowed; the 0x0 matrix stands for the
/// restriction of a form to the empty face.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: (rows, cols),
                found: (entries.len(), 1),
            });
        }
        Ok(IntMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: alloc::vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from nested rows. Every row must have the same length.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: (rows.len(), cols),
                    found: (rows.len(), row.len()),
                });
            }
            entries.extend(row.iter().cloned().map(Into::into));
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            entries,
        })
    }

    /// Like [`IntMatrix::from_rows`] for literal `i64` tables; panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let owned: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        Self::from_rows(&owned).expect("ragged literal matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntMatrix) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: (self.cols, rhs.cols),
                found: (rhs.rows, rhs.cols),
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    out[(r, c)] += a * &rhs[(k, c)];
                }
            }
        }
        Ok(out)
    }

    /// `T * self * T^t`.
    pub fn congruent_by(&self, t: &IntMatrix) -> Result<Self> {
        t.mul(self)?.mul(&t.transpose())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * k).collect(),
        }
    }

    /// Checks `self^t == -self`, reporting the first offending entry.
    pub fn check_skew(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: (self.rows, self.rows),
                found: (self.rows, self.cols),
            });
        }
        for i in 0..self.rows {
            if !self[(i, i)].is_zero() {
                return Err(Error::NonzeroDiagonal { index: i });
            }
            for j in i + 1..self.cols {
                if self[(i, j)] != -&self[(j, i)] {
                    return Err(Error::NotSkew { row: i, col: j });
                }
            }
        }
        Ok(())
    }

    /// Principal submatrix on the given (increasing) indices.
    pub fn principal_submatrix(&self, indices: &[usize]) -> Self {
        let k = indices.len();
        let mut out = Self::zeros(k, k);
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                out[(a, b)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Fraction-free Gaussian elimination (Bareiss).
    pub fn determinant(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: (self.rows, self.rows),
                found: (self.rows, self.cols),
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !a[(r, k)].is_zero()) else {
                    return Ok(BigInt::zero());
                };
                a.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        Ok(sign * &a[(n - 1, n - 1)])
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant()
            .map(|d| d.abs().is_one())
            .unwrap_or(false)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    pub fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let e = &mut self.entries[r * self.cols + c];
            *e = -core::mem::take(e);
        }
    }

    pub fn negate_col(&mut self, c: usize) {
        for r in 0..self.rows {
            let e = &mut self.entries[r * self.cols + c];
            *e = -core::mem::take(e);
        }
    }

    /// `row[dst] += k * row[src]`.
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let v = &self.entries[src * self.cols + c] * k;
            self.entries[dst * self.cols + c] += v;
        }
    }

    /// `col[dst] += k * col[src]`.
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let v = &self.entries[r * self.cols + src] * k;
            self.entries[r * self.cols + dst] += v;
        }
    }

    /// Replaces rows `(i, j)` by `(a*ri + b*rj, c*ri + d*rj)`.
    pub(crate) fn combine_rows(&mut self, i: usize, j: usize, coeffs: [&BigInt; 4]) {
        let [a, b, c, d] = coeffs;
        for col in 0..self.cols {
            let x = self.entries[i * self.cols + col].clone();
            let y = self.entries[j * self.cols + col].clone();
            self.entries[i * self.cols + col] = a * &x + b * &y;
            self.entries[j * self.cols + col] = c * &x + d * &y;
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        debug_assert!(r < self.rows && c < self.cols);
        &self.entries[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigInt {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.entries[r * self.cols + c]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for r in 0..self.rows {
            if r > 0 {
                f.write_str("; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self[(r, c)])?;
            }
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_small_cases() {
        assert_eq!(IntMatrix::identity(4).determinant().unwrap(), BigInt::one());
        let m = IntMatrix::from_i64(&[&[0, 1], &[-1, 0]]);
        assert_eq!(m.determinant().unwrap(), BigInt::one());
        let m = IntMatrix::from_i64(&[&[2, 4, 1], &[0, 6, 3], &[1, 1, 1]]);
        // 2(6-3) - 4(0-3) + 1(0-6) = 6 + 12 - 6
        assert_eq!(m.determinant().unwrap(), BigInt::from(12));
        let m = IntMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert!(m.determinant().unwrap().is_zero());
        assert_eq!(IntMatrix::zeros(0, 0).determinant().unwrap(), BigInt::one());
    }

    #[test]
    fn skew_check_reports_first_violation() {
        let m = IntMatrix::from_i64(&[&[0, 1, 1], &[-1, 0, 1], &[-1, -1, 0]]);
        assert!(m.check_skew().is_ok());
        let m = IntMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(m.check_skew(), Err(Error::NotSkew { row: 0, col: 1 }));
        let m = IntMatrix::from_i64(&[&[1, 0], &[0, 0]]);
        assert_eq!(m.check_skew(), Err(Error::NonzeroDiagonal { index: 0 }));
    }

    #[test]
    fn ragged_rows_rejected() {
        let rows = alloc::vec![alloc::vec![1i64, 2], alloc::vec![3]];
        assert!(IntMatrix::from_rows(&rows).is_err());
    }

    #[test]
    fn congruence_product() {
        let h = IntMatrix::from_i64(&[&[0, 1], &[-1, 0]]);
        let t = IntMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        // det(T) = 1 so T H T^t = H for the standard symplectic form
        assert_eq!(h.congruent_by(&t).unwrap(), h);
    }
}
