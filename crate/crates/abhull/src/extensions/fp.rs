//! Small dense matrices over a prime field, sized for brute-force
//! extension searches.

use super::ExtError;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    pub p: u64,
    pub rows: usize,
    pub cols: usize,
    data: Vec<u64>,
}

impl FpMatrix {
    pub fn zero(p: u64, rows: usize, cols: usize) -> Self {
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = Self::zero(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: u64, rows: &[Vec<u64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zero(p, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.p, other.p);
        let mut out = FpMatrix::zero(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = (out.get(i, j) + a * other.get(k, j)) % self.p;
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j) * v[j] % self.p)
                    .sum::<u64>()
                    % self.p
            })
            .collect()
    }

    fn inv_scalar(&self, a: u64) -> u64 {
        // Fermat: p is prime and a nonzero mod p.
        let mut result = 1u64;
        let mut base = a % self.p;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        result
    }

    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            for c in 0..m.cols {
                let tmp = m.get(row, c);
                m.set(row, c, m.get(pr, c));
                m.set(pr, c, tmp);
            }
            let inv = m.inv_scalar(m.get(row, col));
            for c in 0..m.cols {
                m.set(row, c, m.get(row, c) * inv % m.p);
            }
            for r in 0..m.rows {
                if r != row && m.get(r, col) != 0 {
                    let factor = m.get(r, col);
                    for c in 0..m.cols {
                        let v = (m.get(r, c) + (m.p - factor) * m.get(row, c)) % m.p;
                        m.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space {v : M v = 0}, one column vector
    /// per entry.
    pub fn kernel_basis(&self) -> Vec<Vec<u64>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        for &fc in &free {
            let mut v = vec![0u64; self.cols];
            v[fc] = 1;
            for (prow, &pc) in pivots.iter().enumerate() {
                let coeff = r.get(prow, fc);
                v[pc] = (self.p - coeff) % self.p;
            }
            basis.push(v);
        }
        basis
    }

    /// Solves M x = b, if solvable.
    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = FpMatrix::zero(self.p, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i]);
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![0u64; self.cols];
        for (prow, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(prow, self.cols);
        }
        Some(x)
    }
}

/// All vectors of F_p^n in odometer order.
pub fn all_vectors(p: u64, n: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut v = vec![0u64; n];
    loop {
        out.push(v.clone());
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            v[i] += 1;
            if v[i] < p {
                break;
            }
            v[i] = 0;
            i += 1;
        }
    }
}

pub fn check_prime(p: u64) -> Result<(), ExtError> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(ExtError::NotPrime(p))
    }
}
