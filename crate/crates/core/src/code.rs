//! Linear codes as row spaces: generalized Reed-Solomon codes, duals,
//! restrictions and component-wise (star) products.

use rand::Rng;
use thiserror::Error;

use crate::field::{Fe, Field};
use crate::matrix::{Matrix, MatrixError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid GRS parameters: {0}")]
    InvalidSpec(String),
    #[error("position set is empty")]
    EmptySet,
    #[error("position {position} out of range for length {n}")]
    OutOfRange { position: usize, n: usize },
    #[error("position {0} listed twice")]
    DuplicatePosition(usize),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// A linear code given by a generator matrix whose rows are independent.
///
/// Equality compares row spaces, not generator matrices.
#[derive(Debug, Clone)]
pub struct LinearCode {
    gen: Matrix,
}

impl PartialEq for LinearCode {
    fn eq(&self, other: &Self) -> bool {
        self.gen.same_row_space(&other.gen)
    }
}

impl Eq for LinearCode {}

impl LinearCode {
    /// Wraps a generator matrix. A full-row-rank matrix is kept verbatim;
    /// otherwise it is replaced by the canonical basis of its row space.
    pub fn from_generator(gen: Matrix) -> Self {
        if gen.rank() == gen.rows() {
            LinearCode { gen }
        } else {
            LinearCode { gen: gen.row_space_basis() }
        }
    }

    /// The zero code of length `n`.
    pub fn zero(field: Field, n: usize) -> Self {
        LinearCode { gen: Matrix::zeros(field, 0, n) }
    }

    /// The whole space GF(q)^n.
    pub fn full(field: Field, n: usize) -> Self {
        LinearCode { gen: Matrix::identity(field, n) }
    }

    /// Code spanned by a uniformly random `k x n` matrix.
    pub fn random<R: Rng + ?Sized>(field: Field, k: usize, n: usize, rng: &mut R) -> Self {
        Self::from_generator(Matrix::random(field, k, n, rng))
    }

    pub fn generator(&self) -> &Matrix {
        &self.gen
    }

    pub fn field(&self) -> Field {
        self.gen.field()
    }

    pub fn len(&self) -> usize {
        self.gen.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.gen.cols() == 0
    }

    pub fn dim(&self) -> usize {
        self.gen.rows()
    }

    /// Whether `v` lies in the code.
    pub fn contains(&self, v: &[Fe]) -> bool {
        if v.len() != self.len() {
            return false;
        }
        let Ok(row) = Matrix::from_rows(self.field(), vec![v.to_vec()]) else {
            return false;
        };
        self.gen.vstack(&row).map(|m| m.rank() == self.dim()).unwrap_or(false)
    }

    /// The dual code, spanned by the right kernel of the generator.
    pub fn dual(&self) -> LinearCode {
        LinearCode { gen: self.gen.kernel_basis() }
    }

    /// Keeps only the coordinates in `positions` (0-based), in increasing
    /// order of position.
    pub fn restrict(&self, positions: &[usize]) -> Result<LinearCode, CodeError> {
        let cols = checked_positions(positions, self.len())?;
        Ok(Self::from_generator(self.gen.select_columns(&cols)))
    }

    /// `<A * B>`: span of all products of a generator row of `self` with a
    /// generator row of `other`.
    pub fn star_product(&self, other: &LinearCode) -> Result<LinearCode, CodeError> {
        if self.len() != other.len() {
            return Err(CodeError::DimensionMismatch(format!(
                "star product of lengths {} and {}",
                self.len(),
                other.len()
            )));
        }
        if self.field() != other.field() {
            return Err(MatrixError::FieldMismatch {
                left: self.field().modulus(),
                right: other.field().modulus(),
            }
            .into());
        }
        let f = self.field();
        let mut rows = Vec::with_capacity(self.dim() * other.dim());
        for a in self.gen.row_iter() {
            for b in other.gen.row_iter() {
                rows.push(star(f, a, b));
            }
        }
        let m = Matrix::from_rows_with_cols(f, self.len(), rows)?;
        Ok(LinearCode { gen: m.row_space_basis() })
    }

    /// Generator of the square code `<C^2>`, built from the k(k+1)/2
    /// unordered pairs of generator rows.
    pub fn square_products(&self) -> Matrix {
        let f = self.field();
        let k = self.dim();
        let mut rows = Vec::with_capacity(k * (k + 1) / 2);
        for i in 0..k {
            for j in i..k {
                rows.push(star(f, self.gen.row(i), self.gen.row(j)));
            }
        }
        Matrix::from_rows_with_cols(f, self.len(), rows).expect("rows share the code length")
    }

    pub fn square(&self) -> LinearCode {
        LinearCode { gen: self.square_products().row_space_basis() }
    }

    /// `dim <C^2>`, the distinguishing statistic.
    pub fn square_dim(&self) -> usize {
        self.square_products().rank()
    }
}

/// Validates 0-based positions against a length and returns them sorted.
pub fn checked_positions(positions: &[usize], n: usize) -> Result<Vec<usize>, CodeError> {
    if positions.is_empty() {
        return Err(CodeError::EmptySet);
    }
    let mut cols = positions.to_vec();
    cols.sort_unstable();
    for w in cols.windows(2) {
        if w[0] == w[1] {
            return Err(CodeError::DuplicatePosition(w[0]));
        }
    }
    if let Some(&last) = cols.last() {
        if last >= n {
            return Err(CodeError::OutOfRange { position: last, n });
        }
    }
    Ok(cols)
}

/// Component-wise product `a * b`. Lengths must match.
pub fn star(field: Field, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(&x, &y)| field.mul(x, y)).collect()
}

/// Checked variant of [`star`].
pub fn star_vectors(field: Field, a: &[Fe], b: &[Fe]) -> Result<Vec<Fe>, CodeError> {
    if a.len() != b.len() {
        return Err(CodeError::DimensionMismatch(format!(
            "star product of vectors of lengths {} and {}",
            a.len(),
            b.len()
        )));
    }
    Ok(star(field, a, b))
}

/// Parameters of the generalized Reed-Solomon code `GRS_k(x, y)`: the
/// evaluations `(y_i p(x_i))_i` of all polynomials `p` of degree below `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrsSpec {
    pub field: Field,
    pub x: Vec<Fe>,
    pub y: Vec<Fe>,
    pub k: usize,
}

impl GrsSpec {
    pub fn validate(&self) -> Result<(), CodeError> {
        let n = self.x.len();
        if self.y.len() != n {
            return Err(CodeError::InvalidSpec(format!(
                "{} evaluation points but {} column multipliers",
                n,
                self.y.len()
            )));
        }
        if self.k < 1 || self.k >= n {
            return Err(CodeError::InvalidSpec(format!("need 1 <= k < n, got k={} n={n}", self.k)));
        }
        if n as u64 > self.field.modulus() {
            return Err(CodeError::InvalidSpec(format!(
                "length {n} exceeds field size {}",
                self.field.modulus()
            )));
        }
        if let Some(i) = self.y.iter().position(|v| v.is_zero()) {
            return Err(CodeError::InvalidSpec(format!("multiplier y[{i}] is zero")));
        }
        let mut xs = self.x.clone();
        xs.sort_unstable();
        if xs.windows(2).any(|w| w[0] == w[1]) {
            return Err(CodeError::InvalidSpec("evaluation points are not distinct".into()));
        }
        Ok(())
    }

    /// Random spec with distinct nonzero points and nonzero multipliers.
    pub fn random<R: Rng + ?Sized>(
        field: Field,
        n: usize,
        k: usize,
        rng: &mut R,
    ) -> Result<Self, CodeError> {
        let x = field
            .sample_distinct_nonzero(n, rng)
            .map_err(|e| CodeError::InvalidSpec(e.to_string()))?;
        let y = (0..n).map(|_| field.random_nonzero(rng)).collect();
        let spec = GrsSpec { field, x, y, k };
        spec.validate()?;
        Ok(spec)
    }

    /// Generator with rows `(y_i x_i^t)_i` for `t = 0..k-1`.
    pub fn generator(&self) -> Result<LinearCode, CodeError> {
        self.validate()?;
        let f = self.field;
        let mut rows = Vec::with_capacity(self.k);
        let mut cur = self.y.clone();
        for _ in 0..self.k {
            rows.push(cur.clone());
            cur = cur.iter().zip(&self.x).map(|(&c, &x)| f.mul(c, x)).collect();
        }
        Ok(LinearCode::from_generator(Matrix::from_rows(f, rows)?))
    }
}
