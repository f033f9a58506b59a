//! Smith normal form over the integers, with unimodular transforms
//! and their inverses tracked so linear systems can be solved exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::MatrixZ;
use super::ZlinError;

/// U * M * V = S with U, V unimodular and S diagonal, the diagonal
/// entries nonnegative and each dividing the next.
///
/// `u_inv` and `v_inv` are maintained alongside the reduction; they are
/// what `solve_left` consumes.
#[derive(Clone, Debug)]
pub struct SnfDecomposition {
    pub u: MatrixZ,
    pub s: MatrixZ,
    pub v: MatrixZ,
    pub u_inv: MatrixZ,
    pub v_inv: MatrixZ,
}

impl SnfDecomposition {
    /// Diagonal entries d_0, d_1, ... padded with zeros to length `len`.
    pub fn diagonal_padded(&self, len: usize) -> Vec<BigInt> {
        (0..len)
            .map(|i| {
                if i < self.s.rows() && i < self.s.cols() {
                    self.s.get(i, i).clone()
                } else {
                    BigInt::zero()
                }
            })
            .collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        let min = self.s.rows().min(self.s.cols());
        (0..min).filter(|&i| !self.s.get(i, i).is_zero()).count()
    }

    /// Solves x * M = b for the decomposed matrix M, if solvable over Z.
    /// The returned solution is the deterministic one with zero
    /// coordinates along the kernel directions.
    pub fn solve_left(&self, b: &[BigInt]) -> Result<Option<Vec<BigInt>>, ZlinError> {
        let rows = self.u.rows();
        let cols = self.v.cols();
        if b.len() != cols {
            return Err(ZlinError::DimensionMismatch {
                context: "solve_left: vector length must equal matrix column count",
            });
        }
        let c = MatrixZ::vec_mul(b, &self.v);
        let min = rows.min(cols);
        let mut y = vec![BigInt::zero(); rows];
        for (j, cj) in c.iter().enumerate() {
            if j < min {
                let d = self.s.get(j, j);
                if d.is_zero() {
                    if !cj.is_zero() {
                        return Ok(None);
                    }
                } else {
                    let (q, r) = cj.div_rem(d);
                    if !r.is_zero() {
                        return Ok(None);
                    }
                    y[j] = q;
                }
            } else if !cj.is_zero() {
                return Ok(None);
            }
        }
        Ok(Some(MatrixZ::vec_mul(&y, &self.u)))
    }
}

/// Deterministic Smith normal form. Pivot selection: the entry of
/// smallest nonzero absolute value in the remaining block, ties broken
/// by row then column index. Repeated runs on equal inputs produce
/// identical decompositions.
pub fn snf(m: &MatrixZ) -> SnfDecomposition {
    let rows = m.rows();
    let cols = m.cols();
    let mut s = m.clone();
    let mut u = MatrixZ::identity(rows);
    let mut u_inv = MatrixZ::identity(rows);
    let mut v = MatrixZ::identity(cols);
    let mut v_inv = MatrixZ::identity(cols);

    // Row op helpers keep u, u_inv in sync; column ops keep v, v_inv.
    let min = rows.min(cols);
    for k in 0..min {
        'pivot: loop {
            // Find pivot in s[k.., k..].
            let mut best: Option<(BigInt, usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    let e = s.get(i, j);
                    if e.is_zero() {
                        continue;
                    }
                    let a = e.abs();
                    match &best {
                        Some((ba, _, _)) if *ba <= a => {}
                        _ => best = Some((a, i, j)),
                    }
                }
            }
            let Some((_, pi, pj)) = best else {
                return SnfDecomposition { u, s, v, u_inv, v_inv };
            };
            if pi != k {
                s.swap_rows(k, pi);
                u.swap_rows(k, pi);
                u_inv.swap_cols(k, pi);
            }
            if pj != k {
                s.swap_cols(k, pj);
                v.swap_cols(k, pj);
                v_inv.swap_rows(k, pj);
            }
            if s.get(k, k).is_negative() {
                s.negate_row(k);
                u.negate_row(k);
                u_inv.negate_col(k);
            }

            // Clear column k below the pivot using floor division; any
            // nonzero remainder is strictly smaller than the pivot and
            // triggers a fresh pivot search.
            let pivot = s.get(k, k).clone();
            let mut dirty = false;
            for i in k + 1..rows {
                let e = s.get(i, k).clone();
                if e.is_zero() {
                    continue;
                }
                let q = -e.div_floor(&pivot);
                s.add_row_multiple(i, k, &q);
                u.add_row_multiple(i, k, &q);
                u_inv.add_col_multiple(k, i, &(-q));
                if !s.get(i, k).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue 'pivot;
            }
            for j in k + 1..cols {
                let e = s.get(k, j).clone();
                if e.is_zero() {
                    continue;
                }
                let q = -e.div_floor(&pivot);
                s.add_col_multiple(j, k, &q);
                v.add_col_multiple(j, k, &q);
                v_inv.add_row_multiple(k, j, &(-q));
                if !s.get(k, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue 'pivot;
            }

            // Enforce that the pivot divides the remaining block.
            let mut offender = None;
            'scan: for i in k + 1..rows {
                for j in k + 1..cols {
                    if !s.get(i, j).mod_floor(&pivot).is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            if let Some(i) = offender {
                let one = BigInt::from(1);
                s.add_row_multiple(k, i, &one);
                u.add_row_multiple(k, i, &one);
                u_inv.add_col_multiple(i, k, &BigInt::from(-1));
                continue 'pivot;
            }
            break;
        }
    }
    SnfDecomposition { u, s, v, u_inv, v_inv }
}

/// Finds some x with x * A = b over the integers, or None when the
/// system has no integral solution.
pub fn solve_left(a: &MatrixZ, b: &[BigInt]) -> Result<Option<Vec<BigInt>>, ZlinError> {
    snf(a).solve_left(b)
}

/// A basis of the left kernel lattice {x : x * A = 0}, one basis vector
/// per row. The basis is primitive: it extends to a basis of the full
/// ambient lattice, so membership of arbitrary kernel vectors reduces
/// to integral combinations of these rows.
pub fn kernel_lattice(a: &MatrixZ) -> MatrixZ {
    let dec = snf(a);
    let rows = a.rows();
    let min = rows.min(a.cols());
    let basis: Vec<Vec<BigInt>> = (0..rows)
        .filter(|&i| i >= min || dec.s.get(i, i).is_zero())
        .map(|i| dec.u.row_vec(i))
        .collect();
    MatrixZ::from_rows(rows, &basis)
}
