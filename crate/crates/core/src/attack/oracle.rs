//! Ground-truth checks that need the secret key.
//!
//! For a position set `I` with `J = I ∩ L`, write `X^t = (x_i^t)_{i in I}`
//! and `Y^t` for the same vector with the `J` coordinates zeroed. The
//! restricted public code is spanned by `X^1..X^ell, Y^(ell+1)..Y^k`, which
//! pins down `<C_I^2>` explicitly. These oracles compare those explicit
//! descriptions with what the public key produces.

use crate::code::{checked_positions, LinearCode};
use crate::field::{Fe, Field};
use crate::matrix::Matrix;
use crate::scheme::SecretKey;

use super::AttackError;

/// The vectors `X^t` and `Y^t` over a fixed `I`.
#[derive(Debug, Clone)]
pub struct PowerFamily {
    field: Field,
    points: Vec<Fe>,
    in_j: Vec<bool>,
}

impl PowerFamily {
    pub fn new(field: Field, points: Vec<Fe>, in_j: Vec<bool>) -> Self {
        assert_eq!(points.len(), in_j.len());
        PowerFamily { field, points, in_j }
    }

    /// Family for `I` (0-based positions) under the secret key.
    pub fn from_secret(sk: &SecretKey, positions: &[usize]) -> Result<Self, AttackError> {
        let cols = checked_positions(positions, sk.n())?;
        let mask = sk.in_l_mask();
        Ok(PowerFamily {
            field: sk.field(),
            points: cols.iter().map(|&i| sk.x[i]).collect(),
            in_j: cols.iter().map(|&i| mask[i]).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn j_size(&self) -> usize {
        self.in_j.iter().filter(|&&b| b).count()
    }

    pub fn x_pow(&self, t: usize) -> Vec<Fe> {
        self.points.iter().map(|&x| self.field.pow(x, t as u64)).collect()
    }

    pub fn y_pow(&self, t: usize) -> Vec<Fe> {
        self.points
            .iter()
            .zip(&self.in_j)
            .map(|(&x, &j)| if j { Fe::ZERO } else { self.field.pow(x, t as u64) })
            .collect()
    }

    fn stack(&self, rows: Vec<Vec<Fe>>) -> Matrix {
        Matrix::from_rows_with_cols(self.field, self.len(), rows).expect("family vectors share a length")
    }

    /// `X^1..X^ell` and `Y^(ell+1)..Y^k`: a spanning set of `C_I`.
    pub fn code_generators(&self, ell: usize, k: usize) -> Matrix {
        let rows = (1..=ell).map(|t| self.x_pow(t)).chain((ell + 1..=k).map(|t| self.y_pow(t)));
        self.stack(rows.collect())
    }

    /// `X^t` for `2 <= t <= 2 ell` and `Y^t` for `ell+2 <= t <= 2k`.
    pub fn square_generators(&self, ell: usize, k: usize) -> Matrix {
        let rows = (2..=2 * ell).map(|t| self.x_pow(t)).chain((ell + 2..=2 * k).map(|t| self.y_pow(t)));
        self.stack(rows.collect())
    }

    /// `X^t` for `2 <= t <= ell + |J| + 1` and `Y^t` for `ell+2 <= t <= 2k`.
    pub fn square_basis(&self, ell: usize, k: usize) -> Matrix {
        let top = ell + self.j_size() + 1;
        let rows = (2..=top).map(|t| self.x_pow(t)).chain((ell + 2..=2 * k).map(|t| self.y_pow(t)));
        self.stack(rows.collect())
    }
}

/// The restricted code `C_I` and its square, as seen through the secret `G`.
fn restricted_square(sk: &SecretKey, positions: &[usize]) -> Result<(LinearCode, LinearCode), AttackError> {
    let c = LinearCode::from_generator(sk.g.clone()).restrict(positions)?;
    let sq = c.square();
    Ok((c, sq))
}

/// Whether the explicit generators of the family span `target`, and the
/// explicit code generators span `code`.
pub fn lemma1_span_matches(
    family: &PowerFamily,
    ell: usize,
    k: usize,
    code: &LinearCode,
    target: &LinearCode,
) -> bool {
    family.code_generators(ell, k).same_row_space(code.generator())
        && family.square_generators(ell, k).same_row_space(target.generator())
}

/// `<C_I^2>` is spanned by `X^2..X^(2 ell)` and `Y^(ell+2)..Y^(2k)`.
pub fn oracle_lemma1_generators(sk: &SecretKey, positions: &[usize]) -> Result<bool, AttackError> {
    let family = PowerFamily::from_secret(sk, positions)?;
    let (code, square) = restricted_square(sk, positions)?;
    Ok(lemma1_span_matches(&family, sk.params.ell, sk.params.k, &code, &square))
}

/// Coefficients of `prod_{r in roots} (U - r)`, lowest degree first.
fn poly_from_roots(field: Field, roots: &[Fe]) -> Vec<Fe> {
    let mut coeffs = vec![Fe::ONE];
    for &r in roots {
        let mut next = vec![Fe::ZERO; coeffs.len() + 1];
        for (d, &c) in coeffs.iter().enumerate() {
            next[d + 1] = field.add(next[d + 1], c);
            next[d] = field.sub(next[d], field.mul(c, r));
        }
        coeffs = next;
    }
    coeffs
}

/// Outcome of the relation check for one exponent `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationCheck {
    pub t: usize,
    /// `X^t` lies in the span of `X^u, Y^u` (`ell+2 <= u < t`) and `Y^t`.
    pub in_span: bool,
    /// Leading coefficient of `phi(U) U^(t-|J|)` is one.
    pub leading_is_one: bool,
    /// `X^t = sum_s r_s Y^s - sum_{s<t} r_s X^s` holds coordinate-wise.
    pub identity_holds: bool,
}

impl RelationCheck {
    pub fn holds(&self) -> bool {
        self.in_span && self.leading_is_one && self.identity_holds
    }
}

/// Relation checks for every `t` with `ell + |J| + 2 <= t <= 2 ell`.
pub fn lemma2_checks(sk: &SecretKey, positions: &[usize]) -> Result<Vec<RelationCheck>, AttackError> {
    let f = sk.field();
    let ell = sk.params.ell;
    let family = PowerFamily::from_secret(sk, positions)?;
    let j = family.j_size();
    let lo = ell + j + 2;
    let hi = 2 * ell;
    if lo > hi {
        return Err(AttackError::VacuousRange { ell, j });
    }
    let cols = checked_positions(positions, sk.n())?;
    let mask = sk.in_l_mask();
    let j_points: Vec<Fe> = cols.iter().filter(|&&i| mask[i]).map(|&i| sk.x[i]).collect();
    let phi = poly_from_roots(f, &j_points);

    let mut out = Vec::new();
    for t in lo..=hi {
        let mut span_rows: Vec<Vec<Fe>> = Vec::new();
        for u in ell + 2..t {
            span_rows.push(family.x_pow(u));
            span_rows.push(family.y_pow(u));
        }
        span_rows.push(family.y_pow(t));
        let span = family.stack(span_rows.clone());
        span_rows.push(family.x_pow(t));
        let in_span = family.stack(span_rows).rank() == span.rank();

        // R(U) = phi(U) U^(t-|J|): r_s = phi_{s - (t-|J|)} for s in t-|J|..=t
        let shift = t - j;
        let r = |s: usize| phi[s - shift];
        let leading_is_one = r(t) == Fe::ONE;
        let mut rhs = vec![Fe::ZERO; family.len()];
        for s in shift..=t {
            let ys = family.y_pow(s);
            for (acc, v) in rhs.iter_mut().zip(ys) {
                *acc = f.add(*acc, f.mul(r(s), v));
            }
            if s < t {
                let xs = family.x_pow(s);
                for (acc, v) in rhs.iter_mut().zip(xs) {
                    *acc = f.sub(*acc, f.mul(r(s), v));
                }
            }
        }
        let identity_holds = rhs == family.x_pow(t);
        out.push(RelationCheck { t, in_span, leading_is_one, identity_holds });
    }
    Ok(out)
}

/// True when every relation in the admissible range holds. An empty range
/// is reported as [`AttackError::VacuousRange`].
pub fn oracle_lemma2_relations(sk: &SecretKey, positions: &[usize]) -> Result<bool, AttackError> {
    Ok(lemma2_checks(sk, positions)?.iter().all(RelationCheck::holds))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisReport {
    pub j_size: usize,
    /// Rank of the stacked candidate basis.
    pub rank: usize,
    /// Number of candidate vectors, `2k - 1 + |J|`.
    pub size: usize,
    /// Whether the candidate spans `<C_I^2>`.
    pub spans_square: bool,
}

impl BasisReport {
    pub fn holds(&self) -> bool {
        self.rank == self.size && self.spans_square
    }
}

pub fn prop5_report(sk: &SecretKey, positions: &[usize]) -> Result<BasisReport, AttackError> {
    let family = PowerFamily::from_secret(sk, positions)?;
    let (_, square) = restricted_square(sk, positions)?;
    let basis = family.square_basis(sk.params.ell, sk.params.k);
    Ok(BasisReport {
        j_size: family.j_size(),
        rank: basis.rank(),
        size: basis.rows(),
        spans_square: basis.same_row_space(square.generator()),
    })
}

/// `X^2..X^(ell+|J|+1)` together with `Y^(ell+2)..Y^(2k)` is a basis of
/// `<C_I^2>`.
pub fn oracle_prop5_basis(sk: &SecretKey, positions: &[usize]) -> Result<bool, AttackError> {
    Ok(prop5_report(sk, positions)?.holds())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream_rng;
    use crate::scheme::{keygen, BlParams, Preset};
    use rand::seq::index;

    fn subset(sk: &SecretKey, j: usize, rest: usize, seed: u64) -> Vec<usize> {
        let mut rng = stream_rng(seed, 5);
        let mask = sk.in_l_mask();
        let outside: Vec<usize> = (0..sk.n()).filter(|&i| !mask[i]).collect();
        let mut out: Vec<usize> = index::sample(&mut rng, sk.l.len(), j).into_iter().map(|i| sk.l[i]).collect();
        out.extend(index::sample(&mut rng, outside.len(), rest).into_iter().map(|i| outside[i]));
        out
    }

    #[test]
    fn poly_roots() {
        let f = Field::new(7).unwrap();
        // (U - 1)(U - 2) = U^2 - 3U + 2
        assert_eq!(poly_from_roots(f, &[f.elem(1), f.elem(2)]), vec![f.elem(2), f.elem(4), Fe::ONE]);
        assert_eq!(poly_from_roots(f, &[]), vec![Fe::ONE]);
    }

    #[test]
    fn lemma1_on_small_keys() {
        let params = Preset::Small.params();
        for seed in 0..10 {
            let (sk, _) = keygen(&params, &mut stream_rng(seed, 0)).unwrap();
            let i = subset(&sk, (seed % 3) as usize, 12, seed);
            assert!(oracle_lemma1_generators(&sk, &i).unwrap());
        }
    }

    #[test]
    fn lemma1_without_secret_positions_collapses() {
        let (sk, _) = keygen(&Preset::Small.params(), &mut stream_rng(1, 0)).unwrap();
        let i = subset(&sk, 0, 15, 1);
        let fam = PowerFamily::from_secret(&sk, &i).unwrap();
        for t in 1..=10 {
            assert_eq!(fam.x_pow(t), fam.y_pow(t));
        }
        assert!(oracle_lemma1_generators(&sk, &i).unwrap());
    }

    #[test]
    fn lemma1_detects_wrong_zero_pattern() {
        let (sk, _) = keygen(&Preset::Small.params(), &mut stream_rng(2, 0)).unwrap();
        let i = subset(&sk, 1, 14, 2);
        let honest = PowerFamily::from_secret(&sk, &i).unwrap();
        let (code, square) = restricted_square(&sk, &i).unwrap();
        assert!(lemma1_span_matches(&honest, 3, 5, &code, &square));
        // zero a coordinate outside J as well
        let mut mask = honest.in_j.clone();
        let wrong = mask.iter().position(|&b| !b).unwrap();
        mask[wrong] = true;
        let faulty = PowerFamily::new(honest.field, honest.points.clone(), mask);
        assert!(!lemma1_span_matches(&faulty, 3, 5, &code, &square));
    }

    #[test]
    fn lemma2_range_and_coefficients() {
        let params = BlParams::new(101, 40, 6, 4);
        let (sk, _) = keygen(&params, &mut stream_rng(3, 0)).unwrap();
        let i = subset(&sk, 1, 17, 3);
        let checks = lemma2_checks(&sk, &i).unwrap();
        assert_eq!(checks.iter().map(|c| c.t).collect::<Vec<_>>(), vec![7, 8]);
        assert!(checks.iter().all(RelationCheck::holds));

        let clean = subset(&sk, 0, 18, 3);
        assert!(oracle_lemma2_relations(&sk, &clean).unwrap());

        let vacuous = subset(&sk, 3, 15, 3);
        assert_eq!(lemma2_checks(&sk, &vacuous), Err(AttackError::VacuousRange { ell: 4, j: 3 }));
    }

    #[test]
    fn prop5_cases() {
        let params = Preset::Small.params();
        let (sk, _) = keygen(&params, &mut stream_rng(4, 0)).unwrap();
        let two = subset(&sk, 2, 13, 4);
        let r = prop5_report(&sk, &two).unwrap();
        assert_eq!(r.rank, 2 * 5 + 1);
        assert!(r.holds());

        let clean = subset(&sk, 0, 15, 4);
        let fam = PowerFamily::from_secret(&sk, &clean).unwrap();
        let powers = fam.stack((2..=10).map(|t| fam.x_pow(t)).collect());
        assert!(powers.same_row_space(&fam.square_basis(3, 5)));
        assert_eq!(prop5_report(&sk, &clean).unwrap().rank, 9);

        // |I| - |J| = 2k - 2 < 2k: the candidate basis is dependent
        let tiny = subset(&sk, 2, 8, 4);
        let r = prop5_report(&sk, &tiny).unwrap();
        assert!(r.rank < r.size, "{r:?}");
        assert!(!r.holds());
    }
}
