//! Dense integer matrices with arbitrary-precision entries.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::ZlinError;

/// A rows x cols integer matrix, stored row-major. Entries are
/// arbitrary-precision: normal-form reduction makes intermediate
/// entries grow past any fixed width.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatrixZ {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl MatrixZ {
    pub fn zero(rows: usize, cols: usize) -> Self {
        MatrixZ {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        MatrixZ { rows, cols, data }
    }

    /// Builds a matrix from explicit rows; every row must have length `cols`.
    pub fn from_rows(cols: usize, rows: &[Vec<BigInt>]) -> Self {
        for r in rows {
            assert_eq!(r.len(), cols, "row length mismatch");
        }
        MatrixZ {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().cloned().collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let owned: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|&e| BigInt::from(e)).collect())
            .collect();
        Self::from_rows(cols, &owned)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vec(&self, r: usize) -> Vec<BigInt> {
        self.row(r).to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    /// Stacks `other` below `self`; column counts must agree.
    pub fn vstack(&self, other: &MatrixZ) -> Self {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        MatrixZ {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn mul(&self, other: &MatrixZ) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j) + a * b;
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn vec_mul(v: &[BigInt], m: &MatrixZ) -> Vec<BigInt> {
        assert_eq!(v.len(), m.rows, "vector-matrix dimension mismatch");
        let mut out = vec![BigInt::zero(); m.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for j in 0..m.cols {
                out[j] += vi * m.get(i, j);
            }
        }
        out
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    pub(crate) fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self.get(r, c).clone();
            self.set(r, c, v);
        }
    }

    pub(crate) fn negate_col(&mut self, c: usize) {
        for r in 0..self.rows {
            let v = -self.get(r, c).clone();
            self.set(r, c, v);
        }
    }

    /// row[dst] += q * row[src]
    pub(crate) fn add_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let v = self.get(dst, c) + q * self.get(src, c);
            self.set(dst, c, v);
        }
    }

    /// col[dst] += q * col[src]
    pub(crate) fn add_col_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let v = self.get(r, dst) + q * self.get(r, src);
            self.set(r, dst, v);
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt, ZlinError> {
        if self.rows != self.cols {
            return Err(ZlinError::DimensionMismatch {
                context: "det requires a square matrix",
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&r| !m.get(r, k).is_zero()) {
                    Some(r) => {
                        m.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                    m.set(i, j, v);
                }
                m.set(i, k, BigInt::zero());
            }
            prev = m.get(k, k).clone();
        }
        Ok(sign * m.get(n - 1, n - 1).clone())
    }

    pub fn abs_max(&self) -> BigInt {
        self.data
            .iter()
            .map(|e| e.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

impl std::fmt::Debug for MatrixZ {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "MatrixZ {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{} ", self.get(r, c))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}
