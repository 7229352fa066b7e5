//! Quivers of smash products and skew group algebras, the lifted functors between their
//! representations, and Schofield semi-invariants, all in exact rational arithmetic.

pub mod cli;
pub mod fixtures;
pub mod linalg;
pub mod partition;
pub mod qg;
pub mod quiver;
pub mod schofield;
pub mod schur;
pub mod semisimple;
pub mod suites;
pub mod smash;
pub mod symmetric;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The single random source used throughout; every routine that samples takes a seed.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
