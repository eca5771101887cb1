use super::{assemble, check_same_grid, rank, DistMatrix, DistVector, OpOutput};
use crate::collectives::run_ranks;
use crate::error::Result;
use crate::grid::MatrixLayout;

/// Extracts `B = A(pvec, qvec)`, a `|pvec| x |qvec|` matrix with
/// `B[i, j] = A[pvec[i], qvec[j]]`. Indices must be distinct.
pub fn hip_extract(a: &DistMatrix, pvec: &DistVector, qvec: &DistVector, nthreads: usize) -> Result<OpOutput> {
    check_same_grid(a.grid(), pvec.layout().grid(), "pvec")?;
    check_same_grid(a.grid(), qvec.layout().grid(), "qvec")?;
    let layout = *a.layout();
    let (m2, n2) = (pvec.len(), qvec.len());
    let per_rank = run_ranks(a.grid().size(), |ctx| {
        let r = ctx.rank();
        rank::hip_extract(ctx, &layout, a.block(r), pvec.piece(r), qvec.piece(r), m2, n2, nthreads)
    })?;
    assemble(MatrixLayout::new(a.grid(), m2, n2), per_rank)
}
