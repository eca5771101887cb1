use super::CooMatrix;
use crate::collectives::run_ranks;
use crate::dcsc::LocalDcsc;
use crate::error::Result;
use crate::grid::{MatrixLayout, ProcGrid};
use crate::ops::DistMatrix;
use crate::types::Triple;

/// Places every entry on the rank owning its block, in local coordinates.
/// Each rank picks out its own entries inside the simulated runtime.
pub fn distribute(coo: &CooMatrix, grid: ProcGrid) -> Result<DistMatrix> {
    let layout = MatrixLayout::new(grid, coo.nrows(), coo.ncols());
    let blocks = run_ranks(grid.size(), |ctx| {
        let (r, c) = ctx.coords();
        let (rows, cols) = (layout.row_block(r), layout.col_block(c));
        let mut mine: Vec<Triple> = coo
            .entries()
            .iter()
            .filter(|&&(i, j, _)| rows.contains(&i) && cols.contains(&j))
            .map(|&(i, j, v)| Triple::new(i - rows.start, j - cols.start, v))
            .collect();
        mine.sort_unstable_by_key(Triple::key);
        LocalDcsc::from_sorted_triples(&mine, rows.len(), cols.len())
    })?;
    DistMatrix::new(layout, blocks)
}

/// Global entries of `dm`, sorted by (column, row).
pub fn collect(dm: &DistMatrix) -> Result<CooMatrix> {
    let layout = *dm.layout();
    let per_rank = run_ranks(dm.grid().size(), |ctx| {
        let (r, c) = ctx.coords();
        dm.block(ctx.rank())
            .iter()
            .map(|t| layout.local_to_global(r, c, t.lrow, t.lcol).map(|(i, j)| (i, j, t.val)))
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(CooMatrix::new(dm.nrows(), dm.ncols(), per_rank.concat())?.sorted())
}
