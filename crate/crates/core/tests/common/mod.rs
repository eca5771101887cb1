#![allow(dead_code)]

use hipkernels::io::{distribute, CooMatrix};
use hipkernels::ops::{DistMatrix, DistVector};
use hipkernels::oracle::DenseRef;
use hipkernels::ProcGrid;
use rand::seq::{index, SliceRandom};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn grid(p: usize) -> ProcGrid {
    ProcGrid::new(p).unwrap()
}

/// Random sparse matrix with values that are exact multiples of 1/4, so sums
/// stay exact.
pub fn random_coo(rng: &mut TestRng, m: usize, n: usize, density: f64) -> CooMatrix {
    let mut entries = Vec::new();
    for j in 0..n {
        for i in 0..m {
            if rng.gen_bool(density) {
                entries.push((i, j, rng.gen_range(-400i32..=400) as f64 / 4.0));
            }
        }
    }
    CooMatrix::new(m, n, entries).unwrap()
}

pub fn permutation(rng: &mut TestRng, n: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    v
}

/// `k` distinct values from `0..n` in random order.
pub fn selection(rng: &mut TestRng, n: usize, k: usize) -> Vec<usize> {
    index::sample(rng, n, k).into_vec()
}

pub fn dense(coo: &CooMatrix) -> DenseRef {
    DenseRef::from_entries(coo.nrows(), coo.ncols(), coo.entries()).unwrap()
}

pub fn dense_of(dm: &DistMatrix) -> DenseRef {
    DenseRef::from_entries(dm.nrows(), dm.ncols(), &dm.global_entries()).unwrap()
}

pub fn dist(coo: &CooMatrix, p: usize) -> DistMatrix {
    distribute(coo, grid(p)).unwrap()
}

pub fn dvec(v: &[usize], p: usize) -> DistVector {
    DistVector::from_global(grid(p), v)
}

/// Entries as (row, col, value bits), for bitwise comparison.
pub fn bits(dm: &DistMatrix) -> Vec<(usize, usize, u64)> {
    dm.global_entries()
        .into_iter()
        .map(|(i, j, v)| (i, j, v.to_bits()))
        .collect()
}

pub fn dense_bits(d: &DenseRef) -> Vec<(usize, usize, u64)> {
    d.entries().into_iter().map(|(i, j, v)| (i, j, v.to_bits())).collect()
}
