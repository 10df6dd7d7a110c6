//! The Bogdanov-Lee public-key homomorphic encryption scheme.
//!
//! The secret is a set `L` of `3*ell` positions and a `k x n` matrix `G`
//! whose column `i` is `(x_i, x_i^2, ..., x_i^k)`, except that entries
//! `ell+1..k` are zero for `i` in `L`. The public key is `P = S G` for a
//! random invertible `S`. A message `m` encrypts to `c = uP + m*1 + e` with
//! uniform `u` and sparse noise `e`; decryption applies any `y` supported on
//! `L` with `G y^T = 0` and `sum(y) = 1`.

use std::fmt;

use rand::seq::index;
use rand::Rng;
use thiserror::Error;

use crate::field::{Fe, Field, FieldError};
use crate::matrix::{dot, Matrix, MatrixError};

#[derive(Debug, Clone, PartialEq)]
pub enum ParamViolation {
    Field(FieldError),
    EmptyLength,
    ZeroBlockTooLarge { ell: usize, n: usize },
    DimensionExceedsLength { k: usize, n: usize },
    DimensionTooSmall { k: usize, ell: usize },
    NotEnoughPoints { n: usize, q: u64 },
    NoiseRateOutOfRange(f64),
}

impl fmt::Display for ParamViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamViolation::Field(e) => write!(f, "q: {e}"),
            ParamViolation::EmptyLength => write!(f, "n must be positive"),
            ParamViolation::ZeroBlockTooLarge { ell, n } => {
                write!(f, "3*ell < n violated (ell={ell}, n={n})")
            }
            ParamViolation::DimensionExceedsLength { k, n } => {
                write!(f, "k <= n violated (k={k}, n={n})")
            }
            ParamViolation::DimensionTooSmall { k, ell } => {
                write!(f, "ell + 1 <= k violated (ell={ell}, k={k})")
            }
            ParamViolation::NotEnoughPoints { n, q } => {
                write!(f, "n <= q - 1 violated (n={n}, q={q}): not enough distinct nonzero points")
            }
            ParamViolation::NoiseRateOutOfRange(eta) => {
                write!(f, "noise rate must lie in [0, 1), got {eta}")
            }
        }
    }
}

fn join_violations(v: &[ParamViolation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SchemeError {
    #[error("invalid parameters: {}", join_violations(.0))]
    InvalidParams(Vec<ParamViolation>),
    #[error("secret matrix has rank {rank}, expected {k}")]
    RankDeficient { rank: usize, k: usize },
    #[error("decryption system is inconsistent; key material is corrupted")]
    SolverInconsistent,
    #[error("ciphertext has length {got}, expected {expected}")]
    LengthMismatch { got: usize, expected: usize },
    #[error("field mismatch: q={left} vs q={right}")]
    FieldMismatch { left: u64, right: u64 },
    #[error("invalid secret set: {0}")]
    InvalidSecretSet(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Named desk-scale parameter sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Small,
    Medium,
    Large,
}

impl Preset {
    pub const ALL: [Preset; 3] = [Preset::Small, Preset::Medium, Preset::Large];

    pub fn params(self) -> BlParams {
        let (q, n, k, ell) = match self {
            Preset::Small => (101, 30, 5, 3),
            Preset::Medium => (65_537, 150, 10, 5),
            Preset::Large => (1_048_583, 400, 20, 10),
        };
        BlParams::new(q, n, k, ell)
    }

    pub fn name(self) -> &'static str {
        match self {
            Preset::Small => "small",
            Preset::Medium => "medium",
            Preset::Large => "large",
        }
    }
}

impl std::str::FromStr for Preset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "small" => Ok(Preset::Small),
            "medium" => Ok(Preset::Medium),
            "large" => Ok(Preset::Large),
            other => Err(format!("unknown preset '{other}' (expected small, medium or large)")),
        }
    }
}

/// Scheme parameters. `ell` is public; only `L` and `G` are secret.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlParams {
    pub q: u64,
    pub n: usize,
    pub k: usize,
    pub ell: usize,
    /// Rate of the q-ary symmetric noise channel.
    pub eta: f64,
    /// Asymptotic exponent, recorded for reporting only.
    pub alpha: f64,
}

impl BlParams {
    /// Parameters with the default noise rate for `ell`.
    pub fn new(q: u64, n: usize, k: usize, ell: usize) -> Self {
        BlParams { q, n, k, ell, eta: Self::default_eta(ell), alpha: 0.25 }
    }

    /// Keeps `eta * ell` at 0.009, below the 1% decryption-failure budget.
    pub fn default_eta(ell: usize) -> f64 {
        if ell == 0 {
            0.0
        } else {
            0.009 / ell as f64
        }
    }

    pub fn with_eta(self, eta: f64) -> Self {
        BlParams { eta, ..self }
    }

    /// Every violated constraint, or the field on success.
    pub fn validate(&self) -> Result<Field, Vec<ParamViolation>> {
        let mut out = Vec::new();
        let field = Field::new(self.q).map_err(|e| out.push(ParamViolation::Field(e))).ok();
        if self.n == 0 {
            out.push(ParamViolation::EmptyLength);
        }
        if 3 * self.ell >= self.n {
            out.push(ParamViolation::ZeroBlockTooLarge { ell: self.ell, n: self.n });
        }
        if self.k > self.n {
            out.push(ParamViolation::DimensionExceedsLength { k: self.k, n: self.n });
        }
        if self.ell + 1 > self.k {
            out.push(ParamViolation::DimensionTooSmall { k: self.k, ell: self.ell });
        }
        if self.n as u64 > self.q.saturating_sub(1) {
            out.push(ParamViolation::NotEnoughPoints { n: self.n, q: self.q });
        }
        if !(self.eta >= 0.0 && self.eta < 1.0) {
            out.push(ParamViolation::NoiseRateOutOfRange(self.eta));
        }
        match field {
            Some(f) if out.is_empty() => Ok(f),
            _ => Err(out),
        }
    }

    pub fn field(&self) -> Result<Field, SchemeError> {
        self.validate().map_err(SchemeError::InvalidParams)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SecretKey {
    pub params: BlParams,
    /// Sorted 0-based positions of the zero block.
    pub l: Vec<usize>,
    pub x: Vec<Fe>,
    pub g: Matrix,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PublicKey {
    pub params: BlParams,
    pub p: Matrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ciphertext {
    pub field: Field,
    pub c: Vec<Fe>,
}

/// Builds the secret matrix: column `i` holds `x_i^1..x_i^k`, truncated to
/// `x_i^1..x_i^ell` (then zeros) when `in_l[i]`.
pub fn secret_matrix(field: Field, x: &[Fe], in_l: &[bool], k: usize, ell: usize) -> Matrix {
    let n = x.len();
    let mut g = Matrix::zeros(field, k, n);
    for (i, &xi) in x.iter().enumerate() {
        let top = if in_l[i] { ell.min(k) } else { k };
        let mut p = xi;
        for t in 0..top {
            g.set(t, i, p);
            p = field.mul(p, xi);
        }
    }
    g
}

fn membership_mask(n: usize, l: &[usize]) -> Vec<bool> {
    let mut mask = vec![false; n];
    for &i in l {
        mask[i] = true;
    }
    mask
}

/// Key generation with a uniformly random secret set.
pub fn keygen<R: Rng + ?Sized>(
    params: &BlParams,
    rng: &mut R,
) -> Result<(SecretKey, PublicKey), SchemeError> {
    params.field()?;
    let mut l = index::sample(rng, params.n, 3 * params.ell).into_vec();
    l.sort_unstable();
    keygen_with_secret_set(params, l, rng)
}

/// Key generation with a caller-chosen secret set (0-based positions).
pub fn keygen_with_secret_set<R: Rng + ?Sized>(
    params: &BlParams,
    l: Vec<usize>,
    rng: &mut R,
) -> Result<(SecretKey, PublicKey), SchemeError> {
    let field = params.field()?;
    let mut l = l;
    l.sort_unstable();
    l.dedup();
    if l.len() != 3 * params.ell {
        return Err(SchemeError::InvalidSecretSet(format!(
            "expected {} distinct positions, got {}",
            3 * params.ell,
            l.len()
        )));
    }
    if let Some(&bad) = l.iter().find(|&&i| i >= params.n) {
        return Err(SchemeError::InvalidSecretSet(format!("position {bad} >= n={}", params.n)));
    }
    let x = field.sample_distinct_nonzero(params.n, rng)?;
    let g = secret_matrix(field, &x, &membership_mask(params.n, &l), params.k, params.ell);
    let rank = g.rank();
    if rank != params.k {
        return Err(SchemeError::RankDeficient { rank, k: params.k });
    }
    let s = Matrix::random_invertible(field, params.k, rng)?;
    let p = s.mul(&g)?;
    let sk = SecretKey { params: *params, l, x, g };
    let pk = PublicKey { params: *params, p };
    Ok((sk, pk))
}

/// q-ary symmetric noise: each coordinate is zero with probability
/// `1 - eta`, otherwise uniform over the nonzero elements.
pub fn sample_noise<R: Rng + ?Sized>(field: Field, n: usize, eta: f64, rng: &mut R) -> Vec<Fe> {
    assert!((0.0..1.0).contains(&eta), "noise rate {eta} outside [0, 1)");
    (0..n)
        .map(|_| if rng.gen_bool(eta) { field.random_nonzero(rng) } else { Fe::ZERO })
        .collect()
}

impl PublicKey {
    pub fn field(&self) -> Field {
        self.p.field()
    }

    pub fn n(&self) -> usize {
        self.p.cols()
    }

    /// Row count of `P`; known to anyone holding the key.
    pub fn k(&self) -> usize {
        self.p.rows()
    }

    /// Encrypts with the key's own noise rate.
    pub fn encrypt<R: Rng + ?Sized>(&self, m: Fe, rng: &mut R) -> Ciphertext {
        self.encrypt_with_rate(m, self.params.eta, rng)
    }

    pub fn encrypt_with_rate<R: Rng + ?Sized>(&self, m: Fe, eta: f64, rng: &mut R) -> Ciphertext {
        let f = self.field();
        let u: Vec<Fe> = (0..self.k()).map(|_| f.random(rng)).collect();
        let e = sample_noise(f, self.n(), eta, rng);
        self.encrypt_with(m, &u, &e).expect("lengths match by construction")
    }

    /// `c = uP + m*1 + e` with caller-supplied randomness.
    pub fn encrypt_with(&self, m: Fe, u: &[Fe], e: &[Fe]) -> Result<Ciphertext, SchemeError> {
        let f = self.field();
        if e.len() != self.n() {
            return Err(SchemeError::LengthMismatch { got: e.len(), expected: self.n() });
        }
        let up = self.p.left_mul_vec(u)?;
        let c = up.iter().zip(e).map(|(&a, &b)| f.add(f.add(a, m), b)).collect();
        Ok(Ciphertext { field: f, c })
    }
}

impl SecretKey {
    pub fn field(&self) -> Field {
        self.g.field()
    }

    pub fn n(&self) -> usize {
        self.g.cols()
    }

    pub fn in_l_mask(&self) -> Vec<bool> {
        membership_mask(self.n(), &self.l)
    }

    /// Checks the column shape of `G` against `x` and `L`.
    pub fn has_valid_shape(&self) -> bool {
        let f = self.field();
        let expected = secret_matrix(f, &self.x, &self.in_l_mask(), self.params.k, self.params.ell);
        expected == self.g
    }

    /// The decryption system restricted to the `3*ell` unknowns on `L`: the
    /// first `ell` rows of `G` on the `L` columns, then an all-ones row with
    /// right-hand side 1. Rows below `ell` vanish on `L` and are dropped.
    pub fn decryption_system(&self) -> Result<(Matrix, Vec<Fe>), SchemeError> {
        let ell = self.params.ell;
        let g_l = self.g.select_columns(&self.l);
        let lower: Vec<usize> = (ell..g_l.rows()).collect();
        if !g_l.select_rows(&lower).is_zero() {
            return Err(SchemeError::SolverInconsistent);
        }
        let top: Vec<usize> = (0..ell.min(g_l.rows())).collect();
        let ones = Matrix::from_rows_with_cols(self.field(), self.l.len(), vec![vec![Fe::ONE; self.l.len()]])?;
        let system = g_l.select_rows(&top).vstack(&ones)?;
        let mut rhs = vec![Fe::ZERO; system.rows()];
        rhs[system.rows() - 1] = Fe::ONE;
        Ok((system, rhs))
    }

    /// A solution `y` in GF(q)^n of the decryption system.
    pub fn decryption_vector(&self) -> Result<Vec<Fe>, SchemeError> {
        let (system, rhs) = self.decryption_system()?;
        let sol = system.solve_affine(&rhs).map_err(|e| match e {
            MatrixError::NoSolution => SchemeError::SolverInconsistent,
            other => other.into(),
        })?;
        Ok(embed(self.n(), &self.l, &sol))
    }

    pub fn decrypt(&self, ct: &Ciphertext) -> Result<Fe, SchemeError> {
        let y = self.decryption_vector()?;
        apply_decryption_vector(self.field(), &y, ct)
    }
}

/// Places `values` at `positions` in an otherwise zero vector of length `n`.
pub fn embed(n: usize, positions: &[usize], values: &[Fe]) -> Vec<Fe> {
    let mut y = vec![Fe::ZERO; n];
    for (&i, &v) in positions.iter().zip(values) {
        y[i] = v;
    }
    y
}

/// `sum_i y_i c_i`.
pub fn apply_decryption_vector(field: Field, y: &[Fe], ct: &Ciphertext) -> Result<Fe, SchemeError> {
    if ct.field != field {
        return Err(SchemeError::FieldMismatch { left: field.modulus(), right: ct.field.modulus() });
    }
    if ct.c.len() != y.len() {
        return Err(SchemeError::LengthMismatch { got: ct.c.len(), expected: y.len() });
    }
    Ok(dot(field, y, &ct.c))
}

impl Ciphertext {
    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    /// Coordinate-wise sum; decrypts to the sum of the plaintexts while the
    /// combined noise still vanishes on `L`.
    pub fn add(&self, other: &Ciphertext) -> Result<Ciphertext, SchemeError> {
        if self.field != other.field {
            return Err(SchemeError::FieldMismatch {
                left: self.field.modulus(),
                right: other.field.modulus(),
            });
        }
        if self.len() != other.len() {
            return Err(SchemeError::LengthMismatch { got: other.len(), expected: self.len() });
        }
        let f = self.field;
        let c = self.c.iter().zip(&other.c).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(Ciphertext { field: f, c })
    }
}
