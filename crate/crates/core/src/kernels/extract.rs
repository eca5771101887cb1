use super::{two_pass_fill, SendPlan};
use crate::dcsc::LocalDcsc;
use crate::error::{Error, Result};
use crate::grid::MatrixLayout;
use crate::types::Triple;

/// One stored element of a sparse index vector.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SparsePair {
    pub index: usize,
    pub value: usize,
}

impl SparsePair {
    pub fn new(index: usize, value: usize) -> Self {
        SparsePair { index, value }
    }

    pub fn swapped(self) -> Self {
        SparsePair {
            index: self.value,
            value: self.index,
        }
    }
}

/// Identify step of extraction.
///
/// `rows` pairs a local row of `local` with the output row it becomes; `cols`
/// does the same for columns. `cols` is split into `nthreads` equal parts.
/// For every selected column present in the block, each selected row is
/// looked up with a binary search over that column's row ids; hits are
/// emitted in the output block's local coordinates.
pub fn extract_prepare_send_buffer(
    local: &LocalDcsc,
    rows: &[SparsePair],
    cols: &[SparsePair],
    dst: &MatrixLayout,
    nthreads: usize,
) -> Result<SendPlan> {
    for r in rows {
        if r.index >= local.nrows() {
            return Err(Error::IndexOutOfBounds {
                what: "local row",
                index: r.index,
                bound: local.nrows(),
            });
        }
        if r.value >= dst.nrows() {
            return Err(Error::MappingOutOfRange {
                index: r.value,
                bound: dst.nrows(),
            });
        }
    }
    for c in cols {
        if c.index >= local.ncols() {
            return Err(Error::IndexOutOfBounds {
                what: "local column",
                index: c.index,
                bound: local.ncols(),
            });
        }
        if c.value >= dst.ncols() {
            return Err(Error::MappingOutOfRange {
                index: c.value,
                bound: dst.ncols(),
            });
        }
    }

    let dst_rows: Vec<(usize, usize)> = rows.iter().map(|r| dst.locate_row(r.value)).collect();
    let grid = dst.grid();
    let nthreads = nthreads.max(1);
    let chunk = cols.len().div_ceil(nthreads);
    Ok(two_pass_fill(nthreads, grid.size(), |t, emit| {
        let lo = (t * chunk).min(cols.len());
        let hi = ((t + 1) * chunk).min(cols.len());
        for c in &cols[lo..hi] {
            let Some(k) = local.find_column(c.index) else {
                continue;
            };
            let (ir, num) = local.column(k);
            let (gc, lcol) = dst.locate_col(c.value);
            for (r, &(gr, lrow)) in rows.iter().zip(&dst_rows) {
                if let Ok(pos) = ir.binary_search(&r.index) {
                    emit(grid.rank_of(gr, gc), Triple::new(lrow, lcol, num[pos]));
                }
            }
        }
    }))
}
