//! Frozen sampling primitives.
//!
//! Every random decision in the crate goes through [`SearchRng`], which is
//! ChaCha8 (`rand_chacha`, value-stable across platforms and releases)
//! seeded with `seed_from_u64`. Bounded integers use Lemire's
//! multiply-and-reject method, so there is no modulo bias and no floating
//! point in index sampling. Functions here are generic over [`RngCore`] so
//! tests can script exact draws.

use alloc::vec::Vec;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// The generator used for every run, instance and experiment.
pub type SearchRng = ChaCha8Rng;

/// `e^{-1}`, the stopping threshold for the multiplicative Poisson(1) sampler.
pub const EXP_NEG_ONE: f64 = 0.367_879_441_171_442_3;

pub fn seeded(seed: u64) -> SearchRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform integer in `0..bound`. `bound` must be positive.
pub fn below<R: RngCore + ?Sized>(rng: &mut R, bound: u64) -> u64 {
    debug_assert!(bound > 0);
    let mut wide = (rng.next_u64() as u128) * (bound as u128);
    let mut low = wide as u64;
    if low < bound {
        let threshold = bound.wrapping_neg() % bound;
        while low < threshold {
            wide = (rng.next_u64() as u128) * (bound as u128);
            low = wide as u64;
        }
    }
    (wide >> 64) as u64
}

/// Uniform double in `[0, 1)` built from the top 53 bits of one draw.
pub fn unit<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Draws `s ~ Poisson(1)` and returns `s + 1`.
///
/// Multiplies uniforms until the running product drops below `e^{-1}`; the
/// number of uniforms consumed is exactly `s + 1`.
pub fn poisson_plus_one<R: RngCore + ?Sized>(rng: &mut R) -> u32 {
    let mut product = 1.0;
    let mut draws = 0u32;
    loop {
        draws += 1;
        product *= unit(rng);
        if product < EXP_NEG_ONE {
            return draws;
        }
    }
}

/// Uniform unordered position pair `(i, j)` with `1 <= i < j <= n`.
pub fn unordered_pair<R: RngCore + ?Sized>(rng: &mut R, n: usize) -> (usize, usize) {
    let total = (n * (n - 1) / 2) as u64;
    unrank_unordered_pair(below(rng, total) as usize, n)
}

/// Maps `0..n(n-1)/2` onto pairs `(1,2), (1,3), ..., (1,n), (2,3), ...`.
pub fn unrank_unordered_pair(mut rank: usize, n: usize) -> (usize, usize) {
    for i in 1..n {
        let span = n - i;
        if rank < span {
            return (i, i + 1 + rank);
        }
        rank -= span;
    }
    panic!("pair rank out of range");
}

/// Uniform ordered position pair `(i, j)`, `i != j`, over all `n(n-1)` pairs.
pub fn ordered_pair<R: RngCore + ?Sized>(rng: &mut R, n: usize) -> (usize, usize) {
    let rank = below(rng, (n * (n - 1)) as u64) as usize;
    let i = rank / (n - 1) + 1;
    let other = rank % (n - 1) + 1;
    let j = if other < i { other } else { other + 1 };
    (i, j)
}

/// Uniformly random permutation of the labels `1..=n` (Fisher–Yates).
pub fn permutation<R: RngCore + ?Sized>(rng: &mut R, n: usize) -> Vec<u32> {
    let mut perm: Vec<u32> = (1..=n as u32).collect();
    for i in (1..n).rev() {
        let j = below(rng, (i + 1) as u64) as usize;
        perm.swap(i, j);
    }
    perm
}
