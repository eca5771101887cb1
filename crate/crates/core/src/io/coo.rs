use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::types::Value;

/// Coordinate-list matrix in global 0-based indices.
#[derive(Clone, Debug, PartialEq)]
pub struct CooMatrix {
    nrows: usize,
    ncols: usize,
    entries: Vec<(usize, usize, Value)>,
}

impl CooMatrix {
    /// Fails on out-of-range coordinates (`IndexOutOfBounds`) and repeated
    /// coordinates (`DuplicateEntry`).
    pub fn new(nrows: usize, ncols: usize, entries: Vec<(usize, usize, Value)>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(entries.len());
        for &(i, j, _) in &entries {
            if i >= nrows {
                return Err(Error::IndexOutOfBounds {
                    what: "row",
                    index: i,
                    bound: nrows,
                });
            }
            if j >= ncols {
                return Err(Error::IndexOutOfBounds {
                    what: "column",
                    index: j,
                    bound: ncols,
                });
            }
            if !seen.insert((i, j)) {
                return Err(Error::DuplicateEntry { row: i, col: j });
            }
        }
        Ok(CooMatrix { nrows, ncols, entries })
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(usize, usize, Value)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, usize, Value)> {
        self.entries
    }

    /// Sorts entries by (column, row).
    pub fn sort(&mut self) {
        self.entries.sort_unstable_by_key(|&(i, j, _)| (j, i));
    }

    pub fn sorted(mut self) -> Self {
        self.sort();
        self
    }
}
