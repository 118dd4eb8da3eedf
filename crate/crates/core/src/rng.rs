//! Seeded random streams.
//!
//! A run owns one root seed; every consumer draws from its own child stream
//! so that adding draws in one component never shifts another's sequence.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::evaluation::Tour;

pub type SolverRng = ChaCha8Rng;

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Derives an independent stream from `(seed, stream)`.
pub fn child_rng(seed: u64, stream: u64) -> SolverRng {
    ChaCha8Rng::seed_from_u64(splitmix64(seed ^ splitmix64(stream)))
}

/// Stream ids used by the solver and generators.
pub mod streams {
    pub const MUTATION: u64 = 1;
    pub const OPERATOR_1: u64 = 2;
    pub const OPERATOR_2: u64 = 3;
    pub const PACKING: u64 = 4;
    pub const BASELINE: u64 = 5;
    pub const WINDOW_TOUR: u64 = 6;
    /// Per-tightness window streams are `WINDOW_BASE ^ l`.
    pub const WINDOW_BASE: u64 = 0x5eed_0000_0000_0000;
}

/// Uniform random permutation with the depot fixed in front.
pub fn uniform_tour<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Tour {
    let mut order: Vec<usize> = (0..n).collect();
    order[1..].shuffle(rng);
    Tour::new(order).expect("shuffled identity is a permutation")
}
