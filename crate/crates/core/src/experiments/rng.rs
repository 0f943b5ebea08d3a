//! Seeded random streams.
//!
//! Every dataset draws from its own ChaCha20 stream: the key comes from the
//! base seed and the 64-bit stream id from `(n, p, replicate, role)`. Streams
//! never overlap, so results do not depend on the order in which replicates
//! are scheduled.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

/// What a dataset is used for within a replicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Role {
    Train,
    /// Test set number `j`, zero-based.
    Test(usize),
}

impl Role {
    fn code(self) -> u64 {
        match self {
            Role::Train => 0,
            Role::Test(j) => j as u64 + 1,
        }
    }
}

/// SplitMix64 finalizer.
fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Stream id for one dataset. Folds each component through the mixer so
/// that nearby tuples land on unrelated ids.
pub fn stream_id(n: usize, p: usize, replicate: usize, role: Role) -> u64 {
    [n as u64, p as u64, replicate as u64, role.code()]
        .into_iter()
        .fold(0x6a09_e667_f3bc_c908, |h, v| mix64(h ^ mix64(v)))
}

pub fn dataset_rng(base_seed: u64, n: usize, p: usize, replicate: usize, role: Role) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(base_seed);
    rng.set_stream(stream_id(n, p, replicate, role));
    rng
}
