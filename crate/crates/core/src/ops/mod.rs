//! Distributed permutation, extraction and assignment.
//!
//! Each operation has a per-rank collective program (in [`rank`]) and a
//! convenience wrapper that launches it on every rank with
//! [`run_ranks`](crate::collectives::run_ranks) and reassembles the
//! distributed result.

mod assign;
mod extract;
mod fused;
mod perm;
pub mod rank;

pub use assign::hip_assign;
pub use extract::hip_extract;
pub use fused::hip_assign_perm;
pub use perm::hip_perm;

use crate::collectives::run_ranks;
use crate::dcsc::LocalDcsc;
use crate::error::{Error, Result};
use crate::grid::{MatrixLayout, ProcGrid, VectorLayout};
use crate::kernels::SparsePair;
use crate::metrics::{OpReport, RankStats};
use crate::types::Value;

/// A matrix block-partitioned over a process grid; `blocks[rank]` is the
/// local block of that rank.
#[derive(Clone, Debug, PartialEq)]
pub struct DistMatrix {
    layout: MatrixLayout,
    blocks: Vec<LocalDcsc>,
}

impl DistMatrix {
    pub fn new(layout: MatrixLayout, blocks: Vec<LocalDcsc>) -> Result<Self> {
        let p = layout.grid().size();
        if blocks.len() != p {
            return Err(Error::DimensionMismatch(format!(
                "{} blocks for {p} ranks",
                blocks.len()
            )));
        }
        for (rank, b) in blocks.iter().enumerate() {
            let dims = layout.rank_block_dims(rank);
            if (b.nrows(), b.ncols()) != dims {
                return Err(Error::DimensionMismatch(format!(
                    "rank {rank} block is {}x{}, layout expects {}x{}",
                    b.nrows(),
                    b.ncols(),
                    dims.0,
                    dims.1
                )));
            }
        }
        Ok(DistMatrix { layout, blocks })
    }

    pub fn empty(layout: MatrixLayout) -> Self {
        let blocks = (0..layout.grid().size())
            .map(|rank| {
                let (h, w) = layout.rank_block_dims(rank);
                LocalDcsc::empty(h, w)
            })
            .collect();
        DistMatrix { layout, blocks }
    }

    pub fn layout(&self) -> &MatrixLayout {
        &self.layout
    }

    pub fn grid(&self) -> ProcGrid {
        self.layout.grid()
    }

    pub fn nrows(&self) -> usize {
        self.layout.nrows()
    }

    pub fn ncols(&self) -> usize {
        self.layout.ncols()
    }

    pub fn blocks(&self) -> &[LocalDcsc] {
        &self.blocks
    }

    pub fn block(&self, rank: usize) -> &LocalDcsc {
        &self.blocks[rank]
    }

    pub fn nnz(&self) -> usize {
        self.blocks.iter().map(LocalDcsc::nnz).sum()
    }

    pub fn local_nnz(&self) -> Vec<usize> {
        self.blocks.iter().map(LocalDcsc::nnz).collect()
    }

    pub fn get(&self, i: usize, j: usize) -> Option<Value> {
        let (r, c) = self.layout.owner_of_entry(i, j).ok()?;
        let (li, lj) = self.layout.global_to_local(i, j).ok()?;
        self.blocks[self.grid().rank_of(r, c)].get(li, lj)
    }

    /// Every entry in global coordinates, sorted by (column, row).
    pub fn global_entries(&self) -> Vec<(usize, usize, Value)> {
        let grid = self.grid();
        let mut out = Vec::with_capacity(self.nnz());
        for (rank, b) in self.blocks.iter().enumerate() {
            let (r, c) = grid.coords_of(rank);
            let r0 = self.layout.row_block(r).start;
            let c0 = self.layout.col_block(c).start;
            out.extend(b.iter().map(|t| (r0 + t.lrow, c0 + t.lcol, t.val)));
        }
        out.sort_unstable_by_key(|&(i, j, _)| (j, i));
        out
    }

    /// Bitwise equality of structure and values, regardless of grid.
    pub fn same_entries(&self, other: &DistMatrix) -> bool {
        self.nrows() == other.nrows()
            && self.ncols() == other.ncols()
            && self
                .global_entries()
                .iter()
                .map(|&(i, j, v)| (i, j, v.to_bits()))
                .eq(other.global_entries().iter().map(|&(i, j, v)| (i, j, v.to_bits())))
    }
}

/// A dense index vector under the two-level vector distribution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistVector {
    layout: VectorLayout,
    pieces: Vec<Vec<usize>>,
}

impl DistVector {
    pub fn from_global(grid: ProcGrid, values: &[usize]) -> Self {
        let layout = VectorLayout::new(grid, values.len());
        let pieces = (0..grid.size())
            .map(|rank| values[layout.piece(rank)].to_vec())
            .collect();
        DistVector { layout, pieces }
    }

    pub fn layout(&self) -> &VectorLayout {
        &self.layout
    }

    pub fn len(&self) -> usize {
        self.layout.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layout.is_empty()
    }

    pub fn piece(&self, rank: usize) -> &[usize] {
        &self.pieces[rank]
    }

    pub fn to_global(&self) -> Vec<usize> {
        self.pieces.concat()
    }

    pub(crate) fn from_pieces(layout: VectorLayout, pieces: Vec<Vec<usize>>) -> Self {
        DistVector { layout, pieces }
    }

    /// Fails with `DuplicateIndex` or `IndexOutOfBounds` unless all values are
    /// distinct and below `bound`.
    pub fn check_distinct(&self, bound: usize) -> Result<()> {
        let mut seen = vec![false; bound];
        for &v in self.pieces.iter().flatten() {
            if v >= bound {
                return Err(Error::IndexOutOfBounds {
                    what: "index vector",
                    index: v,
                    bound,
                });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::DuplicateIndex { index: v });
            }
        }
        Ok(())
    }
}

/// Sparse index vector: `(index, value)` pairs stored at the owner of `index`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistSparseVector {
    layout: VectorLayout,
    pieces: Vec<Vec<SparsePair>>,
}

impl DistSparseVector {
    /// Distributes `pairs` to the owners of their indices. Pairs on each rank
    /// are kept sorted by index.
    pub fn from_pairs(grid: ProcGrid, len: usize, pairs: &[SparsePair]) -> Result<Self> {
        let layout = VectorLayout::new(grid, len);
        let mut pieces = vec![Vec::new(); grid.size()];
        for &pair in pairs {
            pieces[layout.vector_owner(pair.index)?].push(pair);
        }
        for piece in &mut pieces {
            piece.sort_unstable();
        }
        Ok(DistSparseVector { layout, pieces })
    }

    /// The sparse form of a dense vector: `(i, v[i])` for every `i`.
    pub fn from_dense(v: &DistVector) -> Self {
        let pieces = (0..v.layout.grid().size())
            .map(|rank| rank::to_sparse(v.layout.piece(rank).start, v.piece(rank)))
            .collect();
        DistSparseVector {
            layout: v.layout,
            pieces,
        }
    }

    pub fn layout(&self) -> &VectorLayout {
        &self.layout
    }

    pub fn piece(&self, rank: usize) -> &[SparsePair] {
        &self.pieces[rank]
    }

    pub fn nnz(&self) -> usize {
        self.pieces.iter().map(Vec::len).sum()
    }

    pub fn to_pairs(&self) -> Vec<SparsePair> {
        self.pieces.concat()
    }
}

/// Inverts a permutation vector: the result `w` satisfies `v[w[i]] = i`.
pub fn swap_index_value(v: &DistVector) -> Result<DistVector> {
    let layout = v.layout;
    let pieces = run_ranks(layout.grid().size(), |ctx| {
        rank::swap_index_value(ctx, &layout, v.piece(ctx.rank()))
    })?;
    Ok(DistVector::from_pieces(layout, pieces))
}

/// Swaps every `(index, value)` pair, redistributing over `[0, target_len)`.
pub fn sparse_swap_index_value(v: &DistSparseVector, target_len: usize) -> Result<DistSparseVector> {
    let grid = v.layout.grid();
    let target = VectorLayout::new(grid, target_len);
    let pieces = run_ranks(grid.size(), |ctx| {
        rank::sparse_swap_index_value(ctx, &target, v.piece(ctx.rank()))
    })?;
    Ok(DistSparseVector { layout: target, pieces })
}

/// Result of one distributed operation.
#[derive(Clone, Debug)]
pub struct OpOutput {
    pub matrix: DistMatrix,
    pub report: OpReport,
}

pub(crate) fn assemble(layout: MatrixLayout, per_rank: Vec<(LocalDcsc, RankStats)>) -> Result<OpOutput> {
    let (blocks, stats): (Vec<_>, Vec<_>) = per_rank.into_iter().unzip();
    Ok(OpOutput {
        matrix: DistMatrix::new(layout, blocks)?,
        report: OpReport { per_rank: stats },
    })
}

pub(crate) fn check_same_grid(a: ProcGrid, b: ProcGrid, what: &str) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch(format!(
            "{what} lives on a {}-rank grid, expected {}",
            b.size(),
            a.size()
        )));
    }
    Ok(())
}

pub(crate) fn check_len(v: &DistVector, expected: usize, what: &str) -> Result<()> {
    if v.len() != expected {
        return Err(Error::DimensionMismatch(format!(
            "{what} has length {}, expected {expected}",
            v.len()
        )));
    }
    Ok(())
}
