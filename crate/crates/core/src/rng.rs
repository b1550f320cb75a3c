//! Reproducible random streams.
//!
//! Every stochastic routine takes a [`SeedStream`] and draws from
//! `ChaCha8Rng` instances keyed by `(root seed, purpose, index)`. The ChaCha
//! stream id carries the index, so batch `i` of a computation sees the same
//! numbers no matter which thread runs it or in what order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Default number of trials per independently seeded batch.
pub const DEFAULT_BATCH: usize = 4096;

/// A splittable seed: a root value plus a purpose tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeedStream {
    root: u64,
    tag: u64,
}

impl SeedStream {
    pub fn new(root: u64) -> Self {
        Self { root, tag: 0 }
    }

    pub fn root(&self) -> u64 {
        self.root
    }

    /// Derives an independent child stream for a distinct purpose.
    pub fn substream(&self, tag: u64) -> Self {
        Self { root: self.root, tag: splitmix64(self.tag ^ splitmix64(tag.wrapping_add(0x5851_f42d_4c95_7f2d))) }
    }

    /// The generator for batch `index` of this stream.
    pub fn rng(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(splitmix64(self.root) ^ self.tag);
        rng.set_stream(index);
        rng
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Splits `total` trials into `(batch index, size)` pairs of at most `batch`.
pub fn batches(total: usize, batch: usize) -> Vec<(u64, usize)> {
    assert!(batch > 0);
    (0..total.div_ceil(batch)).map(|i| (i as u64, batch.min(total - i * batch))).collect()
}
