//! Deterministic RNG derivation: every randomized engine draws from a stream
//! keyed by (user seed, stream tag), so runs are reproducible and independent
//! trials never share a generator.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Stream tags, one per sampling site.
pub mod stream {
    pub const SECANT_TRIAL: u64 = 0x5EC4;
    pub const PLANE_POINTS: u64 = 0x1A7E;
    pub const TAUT_POINTS: u64 = 0x7A07;
    pub const SPECIALIZED: u64 = 0x59EC;
    pub const FIBER_CHECK: u64 = 0xF1BE;
    pub const PLANT: u64 = 0x91A7;
    pub const NEWTON_START: u64 = 0x5787;
    pub const RANDOM_PAIR: u64 = 0x9A12;
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Deterministic generator for (seed, stream). Distinct streams from the same
/// seed are decorrelated by two rounds of splitmix64.
pub fn derive_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splitmix64(seed ^ splitmix64(stream)))
}

/// Generator for indexed sub-streams (trial i, start i, ...).
pub fn derive_rng_indexed(seed: u64, stream: u64, index: u64) -> ChaCha8Rng {
    derive_rng(seed, splitmix64(stream).wrapping_add(index))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn derivation_is_deterministic_and_stream_separated() {
        let a: u64 = derive_rng(7, stream::SECANT_TRIAL).gen();
        let b: u64 = derive_rng(7, stream::SECANT_TRIAL).gen();
        let c: u64 = derive_rng(7, stream::PLANE_POINTS).gen();
        let d: u64 = derive_rng(8, stream::SECANT_TRIAL).gen();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_ne!(a, d);
        let e: u64 = derive_rng_indexed(7, stream::SECANT_TRIAL, 0).gen();
        let f: u64 = derive_rng_indexed(7, stream::SECANT_TRIAL, 1).gen();
        assert_ne!(e, f);
    }
}
