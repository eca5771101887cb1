use std::ops::Range;

use super::{two_pass_fill, SendPlan};
use crate::dcsc::LocalDcsc;
use crate::error::{Error, Result};
use crate::grid::MatrixLayout;
use crate::types::Triple;

/// Splits the stored columns of a block into `nthreads` contiguous ranges
/// (indices into `jc`) holding roughly `nnz / nthreads` entries each. Split
/// points are the column boundaries in `cp` nearest to `t * nnz / nthreads`;
/// a column is never split.
pub fn partition_columns(cp: &[usize], nthreads: usize) -> Vec<Range<usize>> {
    let nthreads = nthreads.max(1);
    let nzc = cp.len() - 1;
    let nnz = cp[nzc];
    let mut bounds = Vec::with_capacity(nthreads + 1);
    bounds.push(0);
    for t in 1..nthreads {
        let target = t * nnz / nthreads;
        // First boundary with cp[k] >= target, then pick the closer neighbour.
        let hi = cp.partition_point(|&x| x < target).min(nzc);
        let k = if hi > 0 && target - cp[hi - 1] < cp[hi].saturating_sub(target) {
            hi - 1
        } else {
            hi
        };
        let prev = *bounds.last().unwrap();
        bounds.push(k.max(prev));
    }
    bounds.push(nzc);
    bounds.windows(2).map(|w| w[0]..w[1]).collect()
}

/// Identify step shared by permutation and assignment.
///
/// `row_map[i]` / `col_map[j]` give the global destination row/column (in
/// `dst`) of local row `i` / local column `j`. Each local entry becomes a
/// triple in the destination block's local coordinates, grouped by the
/// destination rank.
pub fn prepare_send_buffer(
    local: &LocalDcsc,
    row_map: &[usize],
    col_map: &[usize],
    dst: &MatrixLayout,
    nthreads: usize,
) -> Result<SendPlan> {
    if row_map.len() != local.nrows() || col_map.len() != local.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "index maps are {}x{} but the local block is {}x{}",
            row_map.len(),
            col_map.len(),
            local.nrows(),
            local.ncols()
        )));
    }
    // Resolve every destination once: (grid row, local row) per local row and
    // (grid column, local column) per stored column.
    let rows = row_map
        .iter()
        .map(|&i| {
            if i >= dst.nrows() {
                Err(Error::MappingOutOfRange {
                    index: i,
                    bound: dst.nrows(),
                })
            } else {
                Ok(dst.locate_row(i))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let cols = local
        .jc()
        .iter()
        .map(|&j| {
            let g = col_map[j];
            if g >= dst.ncols() {
                Err(Error::MappingOutOfRange {
                    index: g,
                    bound: dst.ncols(),
                })
            } else {
                Ok(dst.locate_col(g))
            }
        })
        .collect::<Result<Vec<_>>>()?;

    let grid = dst.grid();
    let nthreads = nthreads.max(1);
    let parts = partition_columns(local.cp(), nthreads);
    Ok(two_pass_fill(nthreads, grid.size(), |t, emit| {
        for k in parts[t].clone() {
            let (gc, lcol) = cols[k];
            let (ir, num) = local.column(k);
            for (&i, &v) in ir.iter().zip(num) {
                let (gr, lrow) = rows[i];
                emit(grid.rank_of(gr, gc), Triple::new(lrow, lcol, v));
            }
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::ProcGrid;

    #[test]
    fn partition_balances_whole_columns() {
        // Column sizes 5, 1, 1, 1, 4 (nnz 12).
        let cp = [0, 5, 6, 7, 8, 12];
        let parts = partition_columns(&cp, 2);
        assert_eq!(parts, [0..2, 2..5]);
        let parts = partition_columns(&cp, 3);
        assert_eq!(parts.len(), 3);
        assert_eq!(parts.first().unwrap().start, 0);
        assert_eq!(parts.last().unwrap().end, 5);
        for w in parts.windows(2) {
            assert_eq!(w[0].end, w[1].start);
        }
        // More threads than columns: trailing parts are empty.
        let parts = partition_columns(&[0, 2], 4);
        assert_eq!(parts.iter().map(|r| r.len()).sum::<usize>(), 1);
        assert_eq!(partition_columns(&[0], 3), [0..0, 0..0, 0..0]);
    }

    #[test]
    fn identity_single_rank_is_column_major_listing() {
        let triples = [
            Triple::new(0, 0, 1.0),
            Triple::new(2, 0, 2.0),
            Triple::new(1, 2, 3.0),
            Triple::new(0, 3, 4.0),
        ];
        let a = LocalDcsc::from_sorted_triples(&triples, 3, 4).unwrap();
        let dst = MatrixLayout::new(ProcGrid::new(1).unwrap(), 3, 4);
        for nthreads in 1..=4 {
            let plan = prepare_send_buffer(&a, &[0, 1, 2], &[0, 1, 2, 3], &dst, nthreads).unwrap();
            assert_eq!(plan.buffer, triples);
            assert_eq!(plan.proc_pointer, [0, 4]);
        }
    }

    #[test]
    fn worked_8x8_entry_destination() {
        // 8x8 on 2x2. Block (0,1) local (0,0) is global (0,4); with
        // pvec_inv[0] = 1 and qvec_inv[4] = 6 it lands at global (1,6), which
        // rank 1 stores at local (1,2).
        let dst = MatrixLayout::new(ProcGrid::new(4).unwrap(), 8, 8);
        let a = LocalDcsc::from_sorted_triples(&[Triple::new(0, 0, 9.0)], 4, 4).unwrap();
        let plan = prepare_send_buffer(&a, &[1, 0, 2, 3], &[6, 4, 5, 7], &dst, 1).unwrap();
        assert_eq!(plan.send_counts(), [0, 1, 0, 0]);
        assert_eq!(plan.slice_for(1), &[Triple::new(1, 2, 9.0)]);
    }

    #[test]
    fn rejects_out_of_range_maps() {
        let dst = MatrixLayout::new(ProcGrid::new(1).unwrap(), 2, 2);
        let a = LocalDcsc::from_sorted_triples(&[Triple::new(0, 0, 1.0)], 2, 2).unwrap();
        assert!(matches!(
            prepare_send_buffer(&a, &[5, 0], &[0, 1], &dst, 1),
            Err(Error::MappingOutOfRange { index: 5, .. })
        ));
        assert!(matches!(
            prepare_send_buffer(&a, &[0, 1], &[2, 1], &dst, 1),
            Err(Error::MappingOutOfRange { index: 2, .. })
        ));
        assert!(matches!(
            prepare_send_buffer(&a, &[0], &[0, 1], &dst, 1),
            Err(Error::DimensionMismatch(_))
        ));
    }
}
