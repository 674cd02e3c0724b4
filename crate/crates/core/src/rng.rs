//! Seeding conventions. Every sampler in this crate is a pure function of
//! (parameters, count, seed); parallel or chunked generation derives
//! independent substreams from (seed, chunk index) via the ChaCha stream id,
//! so results do not depend on chunk size.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

/// The deterministic generator used throughout the crate.
pub type Rng = ChaCha12Rng;

/// Root generator for a seed.
pub fn seeded_rng(seed: u64) -> Rng {
    ChaCha12Rng::seed_from_u64(seed)
}

/// Substream `chunk` of the root stream for `seed`. Distinct chunks are
/// statistically independent ChaCha streams.
pub fn substream_rng(seed: u64, chunk: u64) -> Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    rng
}
