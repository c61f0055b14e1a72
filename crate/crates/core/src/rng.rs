//! Seeded randomness. All randomness in the crate flows from explicit
//! 64-bit seeds; nothing reads ambient entropy.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// SplitMix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed for stream `index` under `base`. Distinct indices give unrelated seeds.
pub fn derive_seed(base: u64, index: u64) -> u64 {
    mix(base.wrapping_add(mix(index.wrapping_add(0x9e37_79b9_7f4a_7c15))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng as _;

    #[test]
    fn reproducible_and_distinct() {
        let a: u64 = rng_from_seed(derive_seed(7, 3)).gen();
        let b: u64 = rng_from_seed(derive_seed(7, 3)).gen();
        let c: u64 = rng_from_seed(derive_seed(7, 4)).gen();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_ne!(derive_seed(0, 1), derive_seed(1, 0));
    }
}
