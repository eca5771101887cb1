use super::{assemble, check_len, rank, DistMatrix, DistVector, OpOutput};
use crate::collectives::run_ranks;
use crate::error::Result;

/// Permutes rows and columns: the result `B` has `B[i, j] = A[pvec[i], qvec[j]]`
/// and keeps the layout of `A`.
pub fn hip_perm(a: &DistMatrix, pvec: &DistVector, qvec: &DistVector, nthreads: usize) -> Result<OpOutput> {
    check_len(pvec, a.nrows(), "pvec")?;
    check_len(qvec, a.ncols(), "qvec")?;
    super::check_same_grid(a.grid(), pvec.layout().grid(), "pvec")?;
    super::check_same_grid(a.grid(), qvec.layout().grid(), "qvec")?;
    let layout = *a.layout();
    let per_rank = run_ranks(a.grid().size(), |ctx| {
        let r = ctx.rank();
        rank::hip_perm(ctx, &layout, a.block(r), pvec.piece(r), qvec.piece(r), nthreads)
    })?;
    assemble(layout, per_rank)
}
