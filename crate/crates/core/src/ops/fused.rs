use super::{assemble, check_len, check_same_grid, rank, DistMatrix, DistVector, OpOutput};
use crate::collectives::run_ranks;
use crate::error::Result;
use crate::types::AddOp;

/// Fused assign-then-permute: the result equals
/// `hip_perm(hip_assign(A, B, pvec, qvec, op), rperm, cperm)` but moves the
/// triples of `A` and `B` in a single exchange.
#[allow(clippy::too_many_arguments)]
pub fn hip_assign_perm(
    a: &DistMatrix,
    b: &DistMatrix,
    pvec: &DistVector,
    qvec: &DistVector,
    rperm: &DistVector,
    cperm: &DistVector,
    op: AddOp,
    nthreads: usize,
) -> Result<OpOutput> {
    check_same_grid(a.grid(), b.grid(), "B")?;
    for (v, what) in [(pvec, "pvec"), (qvec, "qvec"), (rperm, "rperm"), (cperm, "cperm")] {
        check_same_grid(a.grid(), v.layout().grid(), what)?;
    }
    check_len(pvec, b.nrows(), "pvec")?;
    check_len(qvec, b.ncols(), "qvec")?;
    check_len(rperm, a.nrows(), "rperm")?;
    check_len(cperm, a.ncols(), "cperm")?;
    pvec.check_distinct(a.nrows())?;
    qvec.check_distinct(a.ncols())?;
    let (a_layout, b_layout) = (*a.layout(), *b.layout());
    let per_rank = run_ranks(a.grid().size(), |ctx| {
        let r = ctx.rank();
        rank::hip_assign_perm(
            ctx,
            &a_layout,
            a.block(r),
            &b_layout,
            b.block(r),
            pvec.piece(r),
            qvec.piece(r),
            rperm.piece(r),
            cperm.piece(r),
            op,
            nthreads,
        )
    })?;
    assemble(a_layout, per_rank)
}
