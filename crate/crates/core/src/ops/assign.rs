use super::{assemble, check_len, check_same_grid, rank, DistMatrix, DistVector, OpOutput};
use crate::collectives::run_ranks;
use crate::error::Result;
use crate::types::AddOp;

/// Assigns `A(pvec, qvec) = B`: entry `(k, l)` of `B` is combined into
/// `A[pvec[k], qvec[l]]` with `op`. Entries of `A` outside the target
/// positions are kept. Indices must be distinct.
pub fn hip_assign(
    a: &DistMatrix,
    b: &DistMatrix,
    pvec: &DistVector,
    qvec: &DistVector,
    op: AddOp,
    nthreads: usize,
) -> Result<OpOutput> {
    check_same_grid(a.grid(), b.grid(), "B")?;
    check_same_grid(a.grid(), pvec.layout().grid(), "pvec")?;
    check_same_grid(a.grid(), qvec.layout().grid(), "qvec")?;
    check_len(pvec, b.nrows(), "pvec")?;
    check_len(qvec, b.ncols(), "qvec")?;
    pvec.check_distinct(a.nrows())?;
    qvec.check_distinct(a.ncols())?;
    let (a_layout, b_layout) = (*a.layout(), *b.layout());
    let per_rank = run_ranks(a.grid().size(), |ctx| {
        let r = ctx.rank();
        rank::hip_assign(
            ctx,
            &a_layout,
            a.block(r),
            &b_layout,
            b.block(r),
            pvec.piece(r),
            qvec.piece(r),
            op,
            nthreads,
        )
    })?;
    assemble(a_layout, per_rank)
}
