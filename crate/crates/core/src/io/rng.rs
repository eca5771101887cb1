//! Seeded permutations.
//!
//! The generator is SplitMix64 (Steele, Lea and Flood), written out here so
//! that a given `(n, seed)` yields the same permutation on every platform and
//! in every implementation that follows the same recipe:
//!
//! * state starts at `seed`; each draw adds `0x9E3779B97F4A7C15` (wrapping)
//!   and mixes with the standard SplitMix64 finalizer;
//! * Fisher–Yates runs `i` from `n - 1` down to `1`, picks
//!   `j = (draw * (i + 1)) >> 64` (128-bit product) and swaps `i` and `j`.

/// The SplitMix64 generator.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw in `0..bound` by multiply-shift. `bound` must be nonzero.
    pub fn below(&mut self, bound: usize) -> usize {
        ((self.next_u64() as u128 * bound as u128) >> 64) as usize
    }
}

/// A uniformly random permutation of `0..n`.
pub fn random_permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut rng = SplitMix64::new(seed);
    let mut v: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.below(i + 1);
        v.swap(i, j);
    }
    v
}

/// Row and column permutations for an `m x n` matrix from one seed. The
/// column permutation uses `seed + 1` so square matrices get distinct vectors.
pub fn permutation_pair(m: usize, n: usize, seed: u64) -> (Vec<usize>, Vec<usize>) {
    (random_permutation(m, seed), random_permutation(n, seed.wrapping_add(1)))
}
