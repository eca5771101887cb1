//! File formats, seeded permutations and loading matrices onto a grid.

mod coo;
mod distribute;
mod index_vec;
mod mtx;
mod rng;

pub use coo::CooMatrix;
pub use distribute::{collect, distribute};
pub use index_vec::{parse_index_vector, read_index_vector, render_index_vector, write_index_vector};
pub use mtx::{parse_matrix_market, read_matrix_market, render_matrix_market, write_matrix_market};
pub use rng::{permutation_pair, random_permutation, SplitMix64};
