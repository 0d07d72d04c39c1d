//! Deterministic RNG plumbing. Read `j` of any sampling run draws from the
//! ChaCha stream `(seed, j)`, so how reads are split across worker threads
//! cannot change what any single read sees.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Stream id reserved for annealing-schedule calibration; ordinary reads use
/// their own index as the stream id.
pub(crate) const CALIBRATION_STREAM: u64 = u64::MAX;

pub(crate) fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Stable sub-seed for an independent leg of a larger run (one step count of
/// a sweep, one sampler of a pair). SplitMix64 finalizer over seed and salt.
pub(crate) fn derive(seed: u64, salt: u64) -> u64 {
    let mut z = seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
