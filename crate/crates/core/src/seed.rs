//! Seed derivation shared by every sampler.
//!
//! Trial `i` of a run with master seed `s` uses
//! `trial_seed(s, i) = splitmix64(s ^ i)`, and every sampler turns a seed into
//! a stream with `ChaCha8Rng::seed_from_u64`. Both steps are fixed so reports
//! can be regenerated from their embedded master seed.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Master seed used when none is given.
pub const DEFAULT_MASTER_SEED: u64 = 0x5EED_C0DE;

pub type TrialRng = ChaCha8Rng;

/// One SplitMix64 output for state `x`.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn trial_seed(master: u64, index: u64) -> u64 {
    splitmix64(master ^ index)
}

pub fn rng_from_seed(seed: u64) -> TrialRng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_reference_values() {
        // first outputs of the reference generator seeded with 0
        assert_eq!(splitmix64(0), 0xE220_A839_7B1D_CDAF);
        assert_eq!(splitmix64(0x9E37_79B9_7F4A_7C15), 0x6E78_9E6A_A1B9_65F4);
    }

    #[test]
    fn trial_seeds_differ() {
        let a = trial_seed(DEFAULT_MASTER_SEED, 0);
        let b = trial_seed(DEFAULT_MASTER_SEED, 1);
        assert_ne!(a, b);
        assert_eq!(a, trial_seed(DEFAULT_MASTER_SEED, 0));
    }
}
