//! Seeded, splittable randomness.
//!
//! Every random draw in the crate takes an explicit generator. A single
//! 64-bit seed fans out into independent ChaCha streams, one per purpose, so
//! adding draws to one stage never perturbs another.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type WorkbenchRng = ChaCha8Rng;

/// Stream identifiers used by the command-line front end and the experiment
/// runner. Library callers may use any other values.
pub mod streams {
    pub const KEYGEN: u64 = 1;
    pub const ENCRYPT: u64 = 2;
    pub const ATTACK: u64 = 3;
    pub const EXPERIMENT: u64 = 4;
}

/// Generator for `(seed, stream)`; identical arguments give identical output.
pub fn stream_rng(seed: u64, stream: u64) -> WorkbenchRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Generator for the `index`-th sub-task of a stream, e.g. one trial of an
/// experiment.
pub fn indexed_rng(seed: u64, stream: u64, index: u64) -> WorkbenchRng {
    // word_pos is 68 bits; shift trials far apart within the stream
    let mut rng = stream_rng(seed, stream);
    rng.set_word_pos((index as u128) << 40);
    rng
}
