//! Per-run configuration shared by the higher-level computations.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::cache::MatrixCache;
use crate::exactalg::scalar::random_prime;
use crate::exactalg::{RankConfig, RankMode};

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x5EED_0B1F;
pub const DEFAULT_MEM_MB: u64 = 4096;
const PRIME_BITS: u32 = 62;
const PRIME_POOL: usize = 4;

#[derive(Clone, Debug)]
pub struct Session {
    pub rank: RankConfig,
    pub seed: u64,
    pub cache: Option<MatrixCache>,
}

impl Session {
    /// Draws the pool of modular primes from a ChaCha stream keyed by `seed`.
    pub fn new(mode: RankMode, seed: u64) -> Self {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let mut primes: Vec<u64> = Vec::with_capacity(PRIME_POOL);
        while primes.len() < PRIME_POOL {
            let p = random_prime(&mut rng, PRIME_BITS);
            if !primes.contains(&p) {
                primes.push(p);
            }
        }
        Session {
            rank: RankConfig {
                mode,
                primes,
                trials: 2,
                exact_threshold: 2000,
                budget_entries: budget_from_mb(DEFAULT_MEM_MB),
            },
            seed,
            cache: None,
        }
    }

    pub fn exact() -> Self {
        Self::new(RankMode::Exact, DEFAULT_SEED)
    }

    pub fn with_cache(mut self, cache: MatrixCache) -> Self {
        self.cache = Some(cache);
        self
    }

    pub fn with_mem_mb(mut self, mb: u64) -> Self {
        self.rank.budget_entries = budget_from_mb(mb);
        self
    }

    pub fn mode(&self) -> RankMode {
        self.rank.mode
    }

    pub fn primes(&self) -> &[u64] {
        &self.rank.primes
    }
}

/// A dense-equivalent entry costs roughly 16 bytes.
pub fn budget_from_mb(mb: u64) -> u128 {
    mb as u128 * (1 << 20) / 16
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::scalar::is_prime_u64;

    #[test]
    fn primes_are_seeded_and_distinct() {
        let a = Session::new(RankMode::Modular, 7);
        let b = Session::new(RankMode::Modular, 7);
        let c = Session::new(RankMode::Modular, 8);
        assert_eq!(a.primes(), b.primes());
        assert_ne!(a.primes(), c.primes());
        let mut ps = a.primes().to_vec();
        ps.dedup();
        assert_eq!(ps.len(), PRIME_POOL);
        assert!(ps.iter().all(|&p| is_prime_u64(p) && p >= 1 << 61));
    }
}
