//! Dense matrices over GF(q) and exact Gaussian elimination.

use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::field::{Fe, Field};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operands live in different fields (q={left} vs q={right})")]
    FieldMismatch { left: u64, right: u64 },
    #[error("linear system has no solution")]
    NoSolution,
    #[error("no invertible matrix found after {0} draws")]
    SamplingExhausted(usize),
}

/// Attempts made by [`Matrix::random_invertible`] before giving up.
pub const INVERTIBLE_RETRIES: usize = 64;

/// Row-major dense matrix over a prime field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

/// Reduced row-echelon form together with its rank and pivot columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![Fe::ZERO; rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = Fe::ONE;
        }
        m
    }

    /// Builds a matrix from row vectors; with no rows, `cols` must be given
    /// through [`Matrix::zeros`] instead.
    pub fn from_rows(field: Field, rows: Vec<Vec<Fe>>) -> Result<Self, MatrixError> {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(field, cols, rows)
    }

    pub fn from_rows_with_cols(
        field: Field,
        cols: usize,
        rows: Vec<Vec<Fe>>,
    ) -> Result<Self, MatrixError> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(MatrixError::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            debug_assert!(r.iter().all(|e| e.value() < field.modulus()));
            data.extend(r);
        }
        Ok(Matrix { field, rows: nrows, cols, data })
    }

    /// Convenience constructor reducing plain integers into the field.
    pub fn from_u64(field: Field, rows: &[&[u64]]) -> Result<Self, MatrixError> {
        Self::from_rows(
            field,
            rows.iter().map(|r| r.iter().map(|&v| field.elem(v)).collect()).collect(),
        )
    }

    pub fn random<R: Rng + ?Sized>(field: Field, rows: usize, cols: usize, rng: &mut R) -> Self {
        let data = (0..rows * cols).map(|_| field.random(rng)).collect();
        Matrix { field, rows, cols, data }
    }

    /// Uniform `k x k` invertible matrix by rejection sampling.
    pub fn random_invertible<R: Rng + ?Sized>(
        field: Field,
        k: usize,
        rng: &mut R,
    ) -> Result<Self, MatrixError> {
        for _ in 0..INVERTIBLE_RETRIES {
            let m = Self::random(field, k, k, rng);
            if m.rank() == k {
                return Ok(m);
            }
        }
        Err(MatrixError::SamplingExhausted(INVERTIBLE_RETRIES))
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Fe {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Fe) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[Fe] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Fe]> + '_ {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn column(&self, c: usize) -> Vec<Fe> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Fe>> {
        self.row_iter().map(<[Fe]>::to_vec).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    fn check_field(&self, other: &Matrix) -> Result<(), MatrixError> {
        if self.field != other.field {
            return Err(MatrixError::FieldMismatch {
                left: self.field.modulus(),
                right: other.field.modulus(),
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Self, MatrixError> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(MatrixError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for t in 0..self.cols {
                let a = self.get(r, t);
                if a.is_zero() {
                    continue;
                }
                let src = other.row(t);
                let dst = &mut out.data[r * other.cols..(r + 1) * other.cols];
                for (d, &s) in dst.iter_mut().zip(src) {
                    *d = f.add(*d, f.mul(a, s));
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn left_mul_vec(&self, v: &[Fe]) -> Result<Vec<Fe>, MatrixError> {
        if v.len() != self.rows {
            return Err(MatrixError::DimensionMismatch(format!(
                "vector of length {} times {}x{} matrix",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        let f = self.field;
        let mut out = vec![Fe::ZERO; self.cols];
        for (r, &a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (d, &s) in out.iter_mut().zip(self.row(r)) {
                *d = f.add(*d, f.mul(a, s));
            }
        }
        Ok(out)
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[Fe]) -> Result<Vec<Fe>, MatrixError> {
        if v.len() != self.cols {
            return Err(MatrixError::DimensionMismatch(format!(
                "{}x{} matrix times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok(self.row_iter().map(|row| dot(self.field, row, v)).collect())
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Result<Self, MatrixError> {
        self.check_field(other)?;
        if self.cols != other.cols {
            return Err(MatrixError::DimensionMismatch(format!(
                "cannot stack {} columns on {} columns",
                other.cols, self.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix { field: self.field, rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Keeps the listed columns, in the order given. Panics on an index
    /// outside `0..cols`.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for r in 0..self.rows {
            let row = self.row(r);
            data.extend(cols.iter().map(|&c| row[c]));
        }
        Matrix { field: self.field, rows: self.rows, cols: cols.len(), data }
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        Matrix { field: self.field, rows: rows.len(), cols: self.cols, data }
    }

    /// Subtracts `factor * row[src]` from `row[dst]`, touching columns from
    /// `start` onwards only.
    fn eliminate(&mut self, dst: usize, src: usize, factor: Fe, start: usize) {
        let f = self.field;
        let cols = self.cols;
        let (d, s) = if dst < src {
            let (lo, hi) = self.data.split_at_mut(src * cols);
            (&mut lo[dst * cols..(dst + 1) * cols], &hi[..cols])
        } else {
            let (lo, hi) = self.data.split_at_mut(dst * cols);
            (&mut hi[..cols], &lo[src * cols..(src + 1) * cols])
        };
        for (a, &b) in d[start..].iter_mut().zip(&s[start..]) {
            if !b.is_zero() {
                *a = f.sub(*a, f.mul(factor, b));
            }
        }
    }

    fn scale_row(&mut self, r: usize, factor: Fe, start: usize) {
        let f = self.field;
        let cols = self.cols;
        for a in &mut self.data[r * cols + start..(r + 1) * cols] {
            *a = f.mul(*a, factor);
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let cols = self.cols;
        let (lo, hi) = self.data.split_at_mut(b.max(a) * cols);
        let lo_start = a.min(b) * cols;
        lo[lo_start..lo_start + cols].swap_with_slice(&mut hi[..cols]);
    }

    /// Finds the first row at or below `from` with a nonzero entry in `col`.
    fn find_pivot(&self, col: usize, from: usize) -> Option<usize> {
        (from..self.rows).find(|&r| !self.get(r, col).is_zero())
    }

    /// Forward elimination in place. With `reduce`, also normalises pivots
    /// and clears entries above them. Returns the pivot columns.
    fn eliminate_in_place(&mut self, reduce: bool) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..self.cols {
            if prow == self.rows {
                break;
            }
            let Some(r) = self.find_pivot(col, prow) else {
                continue;
            };
            self.swap_rows(prow, r);
            if reduce {
                let inv = f.inv(self.get(prow, col)).expect("pivot is nonzero");
                self.scale_row(prow, inv, col);
                for other in 0..self.rows {
                    let factor = self.get(other, col);
                    if other != prow && !factor.is_zero() {
                        self.eliminate(other, prow, factor, col);
                    }
                }
            } else {
                let inv = f.inv(self.get(prow, col)).expect("pivot is nonzero");
                for other in prow + 1..self.rows {
                    let entry = self.get(other, col);
                    if !entry.is_zero() {
                        self.eliminate(other, prow, f.mul(entry, inv), col);
                    }
                }
            }
            pivots.push(col);
            prow += 1;
        }
        pivots
    }

    /// Reduced row-echelon form. Pivots are chosen as the first nonzero
    /// entry scanning columns left to right and rows top to bottom.
    pub fn rref(&self) -> Rref {
        let mut reduced = self.clone();
        let pivots = reduced.eliminate_in_place(true);
        Rref { rank: pivots.len(), reduced, pivots }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.eliminate_in_place(false).len()
    }

    /// The nonzero rows of the reduced row-echelon form: a canonical basis of
    /// the row space.
    pub fn row_space_basis(&self) -> Matrix {
        let Rref { reduced, rank, .. } = self.rref();
        let mut data = reduced.data;
        data.truncate(rank * self.cols);
        Matrix { field: self.field, rows: rank, cols: self.cols, data }
    }

    /// A basis of the right kernel `{x : M x^T = 0}`, one vector per row.
    pub fn kernel_basis(&self) -> Matrix {
        let f = self.field;
        let Rref { reduced, pivots, .. } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut out = Self::zeros(f, free.len(), self.cols);
        for (i, &fc) in free.iter().enumerate() {
            out.set(i, fc, Fe::ONE);
            for (r, &pc) in pivots.iter().enumerate() {
                out.set(i, pc, f.neg(reduced.get(r, fc)));
            }
        }
        out
    }

    /// One solution of `M x^T = rhs`, with every free variable set to zero.
    pub fn solve_affine(&self, rhs: &[Fe]) -> Result<Vec<Fe>, MatrixError> {
        if rhs.len() != self.rows {
            return Err(MatrixError::DimensionMismatch(format!(
                "right-hand side has {} entries for {} equations",
                rhs.len(),
                self.rows
            )));
        }
        let mut aug = Self::zeros(self.field, self.rows, self.cols + 1);
        for (r, &b) in rhs.iter().enumerate() {
            aug.data[r * (self.cols + 1)..r * (self.cols + 1) + self.cols]
                .copy_from_slice(self.row(r));
            aug.set(r, self.cols, b);
        }
        let Rref { reduced, pivots, .. } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Err(MatrixError::NoSolution);
        }
        let mut x = vec![Fe::ZERO; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = reduced.get(r, self.cols);
        }
        Ok(x)
    }

    /// True when both matrices span the same row space.
    pub fn same_row_space(&self, other: &Matrix) -> bool {
        self.field == other.field
            && self.cols == other.cols
            && self.row_space_basis() == other.row_space_basis()
    }
}

/// Inner product of two equal-length vectors.
pub fn dot(field: Field, a: &[Fe], b: &[Fe]) -> Fe {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Fe::ZERO, |acc, (&x, &y)| field.add(acc, field.mul(x, y)))
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over GF({})", self.rows, self.cols, self.field.modulus())?;
        for row in self.row_iter() {
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
