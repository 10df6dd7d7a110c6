//! Prime fields GF(q) with a word-sized modulus chosen at runtime.
//!
//! The modulus lives in an explicit [`Field`] value that is passed to every
//! operation; elements are plain canonical residues ([`Fe`]) and carry no
//! reference to their field.

use std::collections::HashSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is too small (need q >= 3)")]
    TooSmall(u64),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("cannot draw {requested} distinct nonzero elements from GF({q})")]
    NotEnoughElements { requested: usize, q: u64 },
    #[error("value {value} is not a canonical residue modulo {q}")]
    NotCanonical { value: u64, q: u64 },
}

/// A canonical residue in `[0, q)`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fe(u64);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn value(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The prime field GF(q).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Field {
    q: u64,
}

impl Field {
    /// Builds GF(q) after checking that `q` is a prime of at least 3.
    pub fn new(q: u64) -> Result<Self, FieldError> {
        if q < 3 {
            return Err(FieldError::TooSmall(q));
        }
        if !is_prime(q) {
            return Err(FieldError::NotPrime(q));
        }
        Ok(Field { q })
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.q
    }

    /// Reduces an arbitrary integer into the field.
    #[inline]
    pub fn elem(&self, v: u64) -> Fe {
        Fe(v % self.q)
    }

    /// Reduces a signed integer into the field.
    pub fn elem_i64(&self, v: i64) -> Fe {
        Fe((v as i128).rem_euclid(self.q as i128) as u64)
    }

    /// Accepts `v` only if it is already a canonical residue.
    pub fn canonical(&self, v: u64) -> Result<Fe, FieldError> {
        if v < self.q {
            Ok(Fe(v))
        } else {
            Err(FieldError::NotCanonical { value: v, q: self.q })
        }
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        // a, b < q <= 2^64 - 1, so the sum may overflow a u64
        let (s, carry) = a.0.overflowing_add(b.0);
        if carry || s >= self.q {
            Fe(s.wrapping_sub(self.q))
        } else {
            Fe(s)
        }
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        if a.0 >= b.0 {
            Fe(a.0 - b.0)
        } else {
            Fe(self.q - (b.0 - a.0))
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        if a.0 == 0 {
            a
        } else {
            Fe(self.q - a.0)
        }
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if self.q <= u32::MAX as u64 {
            Fe(a.0 * b.0 % self.q)
        } else {
            Fe(((a.0 as u128 * b.0 as u128) % self.q as u128) as u64)
        }
    }

    pub fn pow(&self, base: Fe, mut exp: u64) -> Fe {
        let mut acc = Fe::ONE;
        let mut b = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(&self, a: Fe) -> Result<Fe, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::ZeroInverse);
        }
        let (mut r0, mut r1) = (self.q as i128, a.0 as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let quot = r0 / r1;
            (r0, r1) = (r1, r0 - quot * r1);
            (t0, t1) = (t1, t0 - quot * t1);
        }
        debug_assert_eq!(r0, 1);
        Ok(Fe(t0.rem_euclid(self.q as i128) as u64))
    }

    /// Uniform element of GF(q).
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        Fe(rng.gen_range(0..self.q))
    }

    /// Uniform element of GF(q) \ {0}.
    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        Fe(rng.gen_range(1..self.q))
    }

    /// Draws `count` pairwise distinct nonzero elements, in sampling order.
    pub fn sample_distinct_nonzero<R: Rng + ?Sized>(
        &self,
        count: usize,
        rng: &mut R,
    ) -> Result<Vec<Fe>, FieldError> {
        let available = self.q - 1;
        if count as u64 > available {
            return Err(FieldError::NotEnoughElements { requested: count, q: self.q });
        }
        // Dense case: q <= 2*count + 1, so materialising GF(q)* is cheap.
        if (count as u64).saturating_mul(2) >= available {
            let mut all: Vec<Fe> = (1..self.q).map(Fe).collect();
            all.shuffle(rng);
            all.truncate(count);
            return Ok(all);
        }
        let mut seen = HashSet::with_capacity(count);
        let mut out = Vec::with_capacity(count);
        while out.len() < count {
            let v = self.random_nonzero(rng);
            if seen.insert(v) {
                out.push(v);
            }
        }
        Ok(out)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
