//! Square-code dimension tables: planted-overlap probes of BL public keys
//! next to random-code controls.

use rand::seq::index::sample;
use rand::Rng;
use thiserror::Error;

use crate::attack::{restricted_square_dim, AttackError};
use crate::code::LinearCode;
use crate::rng::{indexed_rng, streams};
use crate::scheme::{keygen, BlParams, SchemeError};

pub const CSV_HEADER: &str = "kind,trial,I_size,J_size,measured_dim,predicted_dim,match";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExperimentError {
    #[error("trials must be at least 1")]
    NoTrials,
    #[error("n - 3*ell = {available} positions outside L, need {needed}")]
    TooShort { available: usize, needed: usize },
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Attack(#[from] AttackError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentConfig {
    pub params: BlParams,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowKind {
    Bl,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DimRow {
    pub kind: RowKind,
    pub trial: usize,
    pub i_size: usize,
    /// `None` for random-code controls.
    pub j_size: Option<usize>,
    pub measured: usize,
    pub predicted: usize,
}

impl DimRow {
    pub fn matches(&self) -> bool {
        self.measured == self.predicted
    }

    pub fn to_csv(&self) -> String {
        let kind = match self.kind {
            RowKind::Bl => "bl",
            RowKind::Random => "random",
        };
        let j = self.j_size.map(|j| j.to_string()).unwrap_or_default();
        format!(
            "{kind},{},{},{j},{},{},{}",
            self.trial,
            self.i_size,
            self.measured,
            self.predicted,
            self.matches()
        )
    }
}

/// One trial: a fresh key, `|I| = 3k` with `|I ∩ L| = j` planted for a
/// uniform `j` in `0..ell`, and a random `[3k, k]` control code.
pub fn run_trial(params: &BlParams, seed: u64, trial: usize) -> Result<[DimRow; 2], ExperimentError> {
    let mut rng = indexed_rng(seed, streams::EXPERIMENT, trial as u64);
    let field = params.field()?;
    let (sk, pk) = keygen(params, &mut rng)?;
    let k = params.k;
    let size = 3 * k;
    let j = if params.ell == 0 { 0 } else { rng.gen_range(0..params.ell) };
    let outside: Vec<usize> = {
        let in_l = sk.in_l_mask();
        (0..params.n).filter(|&i| !in_l[i]).collect()
    };
    if outside.len() < size - j {
        return Err(ExperimentError::TooShort { available: outside.len(), needed: size - j });
    }
    let mut positions: Vec<usize> = sample(&mut rng, sk.l.len(), j).into_iter().map(|i| sk.l[i]).collect();
    positions.extend(sample(&mut rng, outside.len(), size - j).into_iter().map(|i| outside[i]));
    positions.sort_unstable();
    let bl = DimRow {
        kind: RowKind::Bl,
        trial,
        i_size: size,
        j_size: Some(j),
        measured: restricted_square_dim(&pk, &positions)?,
        predicted: 2 * k - 1 + j,
    };
    let control = LinearCode::random(field, k, size, &mut rng);
    let random = DimRow {
        kind: RowKind::Random,
        trial,
        i_size: size,
        j_size: None,
        measured: control.square_dim(),
        predicted: (k * (k + 1) / 2).min(size),
    };
    Ok([bl, random])
}

pub fn dim_rows(cfg: &ExperimentConfig) -> Result<Vec<DimRow>, ExperimentError> {
    if cfg.trials == 0 {
        return Err(ExperimentError::NoTrials);
    }
    #[cfg(feature = "parallel")]
    let trials: Vec<_> = {
        use rayon::prelude::*;
        (0..cfg.trials).into_par_iter().map(|t| run_trial(&cfg.params, cfg.seed, t)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let trials: Vec<_> = (0..cfg.trials).map(|t| run_trial(&cfg.params, cfg.seed, t)).collect();
    let mut rows = Vec::with_capacity(2 * cfg.trials);
    for t in trials {
        rows.extend(t?);
    }
    Ok(rows)
}

/// The full CSV, LF line endings, header first.
pub fn dim_table(cfg: &ExperimentConfig) -> Result<String, ExperimentError> {
    let rows = dim_rows(cfg)?;
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.to_csv());
        out.push('\n');
    }
    Ok(out)
}
