//! Index arithmetic for the square process grid.
//!
//! Everything here is 0-based. Non-divisible extents use balanced blocks: when
//! `n` items are split into `q` parts, the first `n % q` parts get one extra
//! item. The same rule is used for matrix row blocks, matrix column blocks and
//! both levels of the vector distribution, so a vector of length `m` splits
//! into grid-row segments that coincide exactly with the matrix row blocks.

use std::ops::Range;

use crate::error::{Error, Result};

/// Start offset of part `k` when `n` items are split into `parts` balanced parts.
#[inline]
pub fn balanced_start(n: usize, parts: usize, k: usize) -> usize {
    let base = n / parts;
    let extra = n % parts;
    k * base + k.min(extra)
}

#[inline]
pub fn balanced_range(n: usize, parts: usize, k: usize) -> Range<usize> {
    balanced_start(n, parts, k)..balanced_start(n, parts, k + 1)
}

/// Which balanced part holds item `idx` (requires `idx < n`).
#[inline]
pub fn balanced_part(n: usize, parts: usize, idx: usize) -> usize {
    let base = n / parts;
    let extra = n % parts;
    let big = extra * (base + 1);
    if idx < big {
        idx / (base + 1)
    } else {
        extra + (idx - big) / base
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProcGrid {
    p: usize,
    q: usize,
}

impl ProcGrid {
    pub fn new(p: usize) -> Result<Self> {
        let q = (p as f64).sqrt().round() as usize;
        if p == 0 || q * q != p {
            return Err(Error::NotPerfectSquare(p));
        }
        Ok(ProcGrid { p, q })
    }

    /// Total rank count.
    pub fn size(&self) -> usize {
        self.p
    }

    /// Grid side length.
    pub fn side(&self) -> usize {
        self.q
    }

    pub fn rank_of(&self, r: usize, c: usize) -> usize {
        debug_assert!(r < self.q && c < self.q);
        r * self.q + c
    }

    pub fn coords_of(&self, rank: usize) -> (usize, usize) {
        debug_assert!(rank < self.p);
        (rank / self.q, rank % self.q)
    }

    /// Ranks of grid row `r`, in ascending grid-column order.
    pub fn row_band_ranks(&self, r: usize) -> Vec<usize> {
        (0..self.q).map(|c| self.rank_of(r, c)).collect()
    }

    /// Ranks of grid column `c`, in ascending grid-row order.
    pub fn col_band_ranks(&self, c: usize) -> Vec<usize> {
        (0..self.q).map(|r| self.rank_of(r, c)).collect()
    }
}

/// Block partition of an `m x n` matrix over a grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatrixLayout {
    grid: ProcGrid,
    m: usize,
    n: usize,
}

impl MatrixLayout {
    pub fn new(grid: ProcGrid, m: usize, n: usize) -> Self {
        MatrixLayout { grid, m, n }
    }

    pub fn grid(&self) -> ProcGrid {
        self.grid
    }

    pub fn nrows(&self) -> usize {
        self.m
    }

    pub fn ncols(&self) -> usize {
        self.n
    }

    pub fn row_block(&self, r: usize) -> Range<usize> {
        balanced_range(self.m, self.grid.q, r)
    }

    pub fn col_block(&self, c: usize) -> Range<usize> {
        balanced_range(self.n, self.grid.q, c)
    }

    /// Local dimensions of block `(r, c)`.
    pub fn block_dims(&self, r: usize, c: usize) -> (usize, usize) {
        (self.row_block(r).len(), self.col_block(c).len())
    }

    pub fn rank_block_dims(&self, rank: usize) -> (usize, usize) {
        let (r, c) = self.grid.coords_of(rank);
        self.block_dims(r, c)
    }

    fn check(&self, i: usize, j: usize) -> Result<()> {
        if i >= self.m {
            return Err(Error::IndexOutOfBounds {
                what: "global row",
                index: i,
                bound: self.m,
            });
        }
        if j >= self.n {
            return Err(Error::IndexOutOfBounds {
                what: "global column",
                index: j,
                bound: self.n,
            });
        }
        Ok(())
    }

    /// Grid row owning global row `i` and the local row inside that block.
    /// Caller guarantees `i < m`.
    #[inline]
    pub fn locate_row(&self, i: usize) -> (usize, usize) {
        let r = balanced_part(self.m, self.grid.q, i);
        (r, i - balanced_start(self.m, self.grid.q, r))
    }

    /// Grid column owning global column `j` and the local column. Caller
    /// guarantees `j < n`.
    #[inline]
    pub fn locate_col(&self, j: usize) -> (usize, usize) {
        let c = balanced_part(self.n, self.grid.q, j);
        (c, j - balanced_start(self.n, self.grid.q, c))
    }

    pub fn owner_of_entry(&self, i: usize, j: usize) -> Result<(usize, usize)> {
        self.check(i, j)?;
        Ok((self.locate_row(i).0, self.locate_col(j).0))
    }

    pub fn global_to_local(&self, i: usize, j: usize) -> Result<(usize, usize)> {
        self.check(i, j)?;
        Ok((self.locate_row(i).1, self.locate_col(j).1))
    }

    pub fn local_to_global(&self, r: usize, c: usize, lrow: usize, lcol: usize) -> Result<(usize, usize)> {
        let q = self.grid.q;
        if r >= q || c >= q {
            return Err(Error::IndexOutOfBounds {
                what: "grid coordinate",
                index: r.max(c),
                bound: q,
            });
        }
        let (h, w) = self.block_dims(r, c);
        if lrow >= h {
            return Err(Error::IndexOutOfBounds {
                what: "local row",
                index: lrow,
                bound: h,
            });
        }
        if lcol >= w {
            return Err(Error::IndexOutOfBounds {
                what: "local column",
                index: lcol,
                bound: w,
            });
        }
        Ok((self.row_block(r).start + lrow, self.col_block(c).start + lcol))
    }
}

/// Two-level distribution of a length-`L` vector: `L` is split into one
/// segment per grid row, and each segment is split again among the ranks of
/// that grid row. Rank `(r, c)` holds piece `c` of segment `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VectorLayout {
    grid: ProcGrid,
    len: usize,
}

impl VectorLayout {
    pub fn new(grid: ProcGrid, len: usize) -> Self {
        VectorLayout { grid, len }
    }

    pub fn grid(&self) -> ProcGrid {
        self.grid
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Global range of grid-row segment `r`.
    pub fn segment(&self, r: usize) -> Range<usize> {
        balanced_range(self.len, self.grid.q, r)
    }

    /// Global range held by `rank`.
    pub fn piece(&self, rank: usize) -> Range<usize> {
        let (r, c) = self.grid.coords_of(rank);
        let seg = self.segment(r);
        let inner = balanced_range(seg.len(), self.grid.q, c);
        seg.start + inner.start..seg.start + inner.end
    }

    pub fn vector_owner(&self, idx: usize) -> Result<usize> {
        if idx >= self.len {
            return Err(Error::IndexOutOfBounds {
                what: "vector",
                index: idx,
                bound: self.len,
            });
        }
        Ok(self.owner_unchecked(idx))
    }

    #[inline]
    pub(crate) fn owner_unchecked(&self, idx: usize) -> usize {
        let q = self.grid.q;
        let r = balanced_part(self.len, q, idx);
        let seg = self.segment(r);
        let c = balanced_part(seg.len(), q, idx - seg.start);
        self.grid.rank_of(r, c)
    }
}
