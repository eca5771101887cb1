//! Per-rank collective programs. Every rank of a grid must call the same
//! function with its own local data; mixing programs across ranks is reported
//! as a collective mismatch or deadlock.

use crate::collectives::RankContext;
use crate::dcsc::LocalDcsc;
use crate::error::{Error, Result};
use crate::grid::{MatrixLayout, VectorLayout};
use crate::kernels::{
    build_local_matrix, extract_prepare_send_buffer, local_add, prepare_send_buffer, SendPlan, SparsePair,
};
use crate::metrics::{PhaseClock, RankStats};
use crate::types::{AddOp, Triple};

pub(crate) fn to_sparse(start: usize, piece: &[usize]) -> Vec<SparsePair> {
    piece
        .iter()
        .enumerate()
        .map(|(k, &v)| SparsePair::new(start + k, v))
        .collect()
}

fn check_piece(ctx: &RankContext<'_>, layout: &VectorLayout, piece: &[usize], what: &str) -> Result<()> {
    let expected = layout.piece(ctx.rank()).len();
    if piece.len() != expected {
        return Err(Error::DimensionMismatch(format!(
            "rank {} holds {} entries of {what}, layout expects {expected}",
            ctx.rank(),
            piece.len()
        )));
    }
    Ok(())
}

fn check_values(piece: &[usize], bound: usize) -> Result<()> {
    match piece.iter().find(|&&v| v >= bound) {
        Some(&index) => Err(Error::IndexOutOfBounds {
            what: "index vector",
            index,
            bound,
        }),
        None => Ok(()),
    }
}

/// Inverts a distributed permutation. `piece` is this rank's piece of `v`
/// under `layout`; the result is this rank's piece of `w` with `v[w[i]] = i`.
pub fn swap_index_value(ctx: &RankContext<'_>, layout: &VectorLayout, piece: &[usize]) -> Result<Vec<usize>> {
    check_piece(ctx, layout, piece, "the permutation")?;
    let start = layout.piece(ctx.rank()).start;
    let mut send = vec![Vec::new(); ctx.size()];
    for (k, &v) in piece.iter().enumerate() {
        if v >= layout.len() {
            return Err(Error::NotAPermutation(format!(
                "value {v} out of range 0..{}",
                layout.len()
            )));
        }
        send[layout.owner_unchecked(v)].push((v, start + k));
    }
    let recv = ctx.alltoallv(send)?;

    let mine = layout.piece(ctx.rank());
    let mut out = vec![usize::MAX; mine.len()];
    for (v, i) in recv.into_iter().flatten() {
        let slot = &mut out[v - mine.start];
        if *slot != usize::MAX {
            return Err(Error::NotAPermutation(format!("value {v} appears more than once")));
        }
        *slot = i;
    }
    if let Some(k) = out.iter().position(|&i| i == usize::MAX) {
        return Err(Error::NotAPermutation(format!("value {} is missing", mine.start + k)));
    }
    Ok(out)
}

/// Swaps `(index, value)` pairs and sends each to the owner of its new index
/// under `target`. The result is sorted by index.
pub fn sparse_swap_index_value(
    ctx: &RankContext<'_>,
    target: &VectorLayout,
    pairs: &[SparsePair],
) -> Result<Vec<SparsePair>> {
    let mut send = vec![Vec::new(); ctx.size()];
    for &pair in pairs {
        let owner = target.vector_owner(pair.value)?;
        send[owner].push(pair.swapped());
    }
    let mut out: Vec<SparsePair> = ctx.alltoallv(send)?.into_iter().flatten().collect();
    out.sort_unstable();
    if let Some(w) = out.windows(2).find(|w| w[0].index == w[1].index) {
        return Err(Error::DuplicateTarget { value: w[0].index });
    }
    Ok(out)
}

/// Gathers the index data a rank needs for its block: the row segment of its
/// grid row and the column segment of its grid column.
///
/// `row_piece` and `col_piece` are this rank's pieces of two vectors laid out
/// like the matrix rows and columns. Rows are gathered along the grid row.
/// Columns first move to the transposed rank, which turns piece `c` of segment
/// `r` into piece `r` of segment `c`, then are gathered along the grid column.
pub fn gather_row_col_maps<T: Clone + Send + 'static>(
    ctx: &RankContext<'_>,
    row_piece: Vec<T>,
    col_piece: Vec<T>,
) -> Result<(Vec<T>, Vec<T>)> {
    let grid = ctx.grid();
    let (r, c) = ctx.coords();
    let rows = ctx.allgather_band(&grid.row_band_ranks(r), row_piece)?;

    let mut send: Vec<Vec<T>> = (0..ctx.size()).map(|_| Vec::new()).collect();
    send[grid.rank_of(c, r)] = col_piece;
    let transposed = ctx.alltoallv(send)?.swap_remove(grid.rank_of(c, r));
    let cols = ctx.allgather_band(&grid.col_band_ranks(c), transposed)?;
    Ok((rows, cols))
}

/// Looks up `table[key]` for every key, where `table` is distributed under
/// `layout` and `local_table` is this rank's piece.
fn fetch_entries(
    ctx: &RankContext<'_>,
    layout: &VectorLayout,
    local_table: &[usize],
    keys: &[usize],
) -> Result<Vec<usize>> {
    let p = ctx.size();
    let mut requests = vec![Vec::new(); p];
    let mut origin = Vec::with_capacity(keys.len());
    for &key in keys {
        let owner = layout.vector_owner(key)?;
        origin.push((owner, requests[owner].len()));
        requests[owner].push(key);
    }
    let start = layout.piece(ctx.rank()).start;
    let answers: Vec<Vec<usize>> = ctx
        .alltoallv(requests)?
        .into_iter()
        .map(|asked| asked.into_iter().map(|k| local_table[k - start]).collect())
        .collect();
    let replies = ctx.alltoallv(answers)?;
    Ok(origin.into_iter().map(|(d, k)| replies[d][k]).collect())
}

/// Sends each destination's slice of `plan` and returns everything received,
/// along with (sent, received) counts.
fn exchange_plan(ctx: &RankContext<'_>, plan: SendPlan) -> Result<(Vec<Triple>, usize, usize)> {
    let sent = plan.len();
    let recv: Vec<Triple> = ctx
        .alltoallv(plan.into_per_destination())?
        .into_iter()
        .flatten()
        .collect();
    let received = recv.len();
    log::debug!("rank {}: exchanged {sent} triples out, {received} in", ctx.rank());
    Ok((recv, sent, received))
}

fn check_block(ctx: &RankContext<'_>, layout: &MatrixLayout, block: &LocalDcsc, what: &str) -> Result<()> {
    let dims = layout.rank_block_dims(ctx.rank());
    if (block.nrows(), block.ncols()) != dims {
        return Err(Error::DimensionMismatch(format!(
            "{what} block on rank {} is {}x{}, layout expects {}x{}",
            ctx.rank(),
            block.nrows(),
            block.ncols(),
            dims.0,
            dims.1
        )));
    }
    Ok(())
}

/// Local part of `A(pvec, qvec)` for permutations `pvec`, `qvec`.
///
/// `pvec_piece` / `qvec_piece` are this rank's pieces of permutations of
/// length `m` and `n` (the matrix dimensions). The result block lives on the
/// same layout as `a`.
pub fn hip_perm(
    ctx: &RankContext<'_>,
    layout: &MatrixLayout,
    a: &LocalDcsc,
    pvec_piece: &[usize],
    qvec_piece: &[usize],
    nthreads: usize,
) -> Result<(LocalDcsc, RankStats)> {
    check_block(ctx, layout, a, "input")?;
    let mut stats = RankStats::default();
    let mut clock = PhaseClock::start();
    let grid = ctx.grid();

    // Entry (i, j) of A moves to (pinv[i], qinv[j]).
    let pinv = swap_index_value(ctx, &VectorLayout::new(grid, layout.nrows()), pvec_piece)?;
    let qinv = swap_index_value(ctx, &VectorLayout::new(grid, layout.ncols()), qvec_piece)?;
    let (row_map, col_map) = gather_row_col_maps(ctx, pinv, qinv)?;
    stats.gather_s = clock.lap();

    let plan = prepare_send_buffer(a, &row_map, &col_map, layout, nthreads)?;
    stats.local_s = clock.lap();

    let recv;
    (recv, stats.sent, stats.received) = exchange_plan(ctx, plan)?;
    stats.exchange_s = clock.lap();

    let (h, w) = layout.rank_block_dims(ctx.rank());
    let out = build_local_matrix(recv, h, w, nthreads)?;
    stats.build_s = clock.lap();
    Ok((out, stats))
}

/// Local part of `B = A(pvec, qvec)` for index vectors of lengths `out_rows`
/// and `out_cols` whose values are distinct rows / columns of `A`.
#[allow(clippy::too_many_arguments)]
pub fn hip_extract(
    ctx: &RankContext<'_>,
    layout: &MatrixLayout,
    a: &LocalDcsc,
    pvec_piece: &[usize],
    qvec_piece: &[usize],
    out_rows: usize,
    out_cols: usize,
    nthreads: usize,
) -> Result<(LocalDcsc, RankStats)> {
    check_block(ctx, layout, a, "input")?;
    let grid = ctx.grid();
    let p_layout = VectorLayout::new(grid, out_rows);
    let q_layout = VectorLayout::new(grid, out_cols);
    check_piece(ctx, &p_layout, pvec_piece, "pvec")?;
    check_piece(ctx, &q_layout, qvec_piece, "qvec")?;
    check_values(pvec_piece, layout.nrows())?;
    check_values(qvec_piece, layout.ncols())?;
    let mut stats = RankStats::default();
    let mut clock = PhaseClock::start();

    // Pairs (source index, output index), held by the owner of the source.
    let dup = |e| match e {
        Error::DuplicateTarget { value } => Error::DuplicateIndex { index: value },
        e => e,
    };
    let rows = sparse_swap_index_value(
        ctx,
        &VectorLayout::new(grid, layout.nrows()),
        &to_sparse(p_layout.piece(ctx.rank()).start, pvec_piece),
    )
    .map_err(dup)?;
    let cols = sparse_swap_index_value(
        ctx,
        &VectorLayout::new(grid, layout.ncols()),
        &to_sparse(q_layout.piece(ctx.rank()).start, qvec_piece),
    )
    .map_err(dup)?;
    let (mut rows, mut cols) = gather_row_col_maps(ctx, rows, cols)?;
    let (r, c) = ctx.coords();
    let (r0, c0) = (layout.row_block(r).start, layout.col_block(c).start);
    rows.iter_mut().for_each(|s| s.index -= r0);
    cols.iter_mut().for_each(|s| s.index -= c0);
    stats.gather_s = clock.lap();

    let dst = MatrixLayout::new(grid, out_rows, out_cols);
    let plan = extract_prepare_send_buffer(a, &rows, &cols, &dst, nthreads)?;
    stats.local_s = clock.lap();

    let recv;
    (recv, stats.sent, stats.received) = exchange_plan(ctx, plan)?;
    stats.exchange_s = clock.lap();

    let (h, w) = dst.rank_block_dims(ctx.rank());
    let out = build_local_matrix(recv, h, w, nthreads)?;
    stats.build_s = clock.lap();
    Ok((out, stats))
}

/// Local part of `A(pvec, qvec) = B`. `pvec` / `qvec` have the dimensions of
/// `B` and must hold distinct row / column indices of `A`; repeated indices
/// surface as a duplicate coordinate during the build.
#[allow(clippy::too_many_arguments)]
pub fn hip_assign(
    ctx: &RankContext<'_>,
    a_layout: &MatrixLayout,
    a: &LocalDcsc,
    b_layout: &MatrixLayout,
    b: &LocalDcsc,
    pvec_piece: &[usize],
    qvec_piece: &[usize],
    op: AddOp,
    nthreads: usize,
) -> Result<(LocalDcsc, RankStats)> {
    check_block(ctx, a_layout, a, "target")?;
    check_block(ctx, b_layout, b, "source")?;
    let grid = ctx.grid();
    check_piece(ctx, &VectorLayout::new(grid, b_layout.nrows()), pvec_piece, "pvec")?;
    check_piece(ctx, &VectorLayout::new(grid, b_layout.ncols()), qvec_piece, "qvec")?;
    check_values(pvec_piece, a_layout.nrows())?;
    check_values(qvec_piece, a_layout.ncols())?;
    let mut stats = RankStats::default();
    let mut clock = PhaseClock::start();

    let (row_map, col_map) = gather_row_col_maps(ctx, pvec_piece.to_vec(), qvec_piece.to_vec())?;
    stats.gather_s = clock.lap();

    let plan = prepare_send_buffer(b, &row_map, &col_map, a_layout, nthreads)?;
    stats.local_s = clock.lap();

    let recv;
    (recv, stats.sent, stats.received) = exchange_plan(ctx, plan)?;
    stats.exchange_s = clock.lap();

    let (h, w) = a_layout.rank_block_dims(ctx.rank());
    let moved = build_local_matrix(recv, h, w, nthreads)?;
    stats.build_s = clock.lap();

    let out = local_add(a, &moved, op)?;
    stats.add_s = clock.lap();
    Ok((out, stats))
}

/// Local part of the fused assign-then-permute: `A(pvec, qvec) = B` followed
/// by permuting rows with `rperm` and columns with `cperm`, using one triple
/// exchange for both operands.
///
/// Entry `(i, j)` of `A` lands at `(rinv[i], cinv[j])` and entry `(k, l)` of
/// `B` lands at `(rinv[pvec[k]], cinv[qvec[l]])`, where `rinv`, `cinv` are the
/// inverse permutations.
#[allow(clippy::too_many_arguments)]
pub fn hip_assign_perm(
    ctx: &RankContext<'_>,
    a_layout: &MatrixLayout,
    a: &LocalDcsc,
    b_layout: &MatrixLayout,
    b: &LocalDcsc,
    pvec_piece: &[usize],
    qvec_piece: &[usize],
    rperm_piece: &[usize],
    cperm_piece: &[usize],
    op: AddOp,
    nthreads: usize,
) -> Result<(LocalDcsc, RankStats)> {
    check_block(ctx, a_layout, a, "target")?;
    check_block(ctx, b_layout, b, "source")?;
    let grid = ctx.grid();
    check_piece(ctx, &VectorLayout::new(grid, b_layout.nrows()), pvec_piece, "pvec")?;
    check_piece(ctx, &VectorLayout::new(grid, b_layout.ncols()), qvec_piece, "qvec")?;
    check_values(pvec_piece, a_layout.nrows())?;
    check_values(qvec_piece, a_layout.ncols())?;
    let mut stats = RankStats::default();
    let mut clock = PhaseClock::start();

    let m_layout = VectorLayout::new(grid, a_layout.nrows());
    let n_layout = VectorLayout::new(grid, a_layout.ncols());
    let rinv = swap_index_value(ctx, &m_layout, rperm_piece)?;
    let cinv = swap_index_value(ctx, &n_layout, cperm_piece)?;
    let b_rows = fetch_entries(ctx, &m_layout, &rinv, pvec_piece)?;
    let b_cols = fetch_entries(ctx, &n_layout, &cinv, qvec_piece)?;
    let (a_row_map, a_col_map) = gather_row_col_maps(ctx, rinv, cinv)?;
    let (b_row_map, b_col_map) = gather_row_col_maps(ctx, b_rows, b_cols)?;
    stats.gather_s = clock.lap();

    let plan_a = prepare_send_buffer(a, &a_row_map, &a_col_map, a_layout, nthreads)?;
    let plan_b = prepare_send_buffer(b, &b_row_map, &b_col_map, a_layout, nthreads)?;
    stats.local_s = clock.lap();

    // One exchange carries both operands; the flag marks triples from B.
    stats.sent = plan_a.len() + plan_b.len();
    let send: Vec<Vec<(bool, Triple)>> = plan_a
        .into_per_destination()
        .into_iter()
        .zip(plan_b.into_per_destination())
        .map(|(xs, ys)| {
            xs.into_iter()
                .map(|t| (false, t))
                .chain(ys.into_iter().map(|t| (true, t)))
                .collect()
        })
        .collect();
    let (mut base, mut update) = (Vec::new(), Vec::new());
    for (from_b, t) in ctx.alltoallv(send)?.into_iter().flatten() {
        if from_b {
            update.push(t)
        } else {
            base.push(t)
        }
    }
    stats.received = base.len() + update.len();
    log::debug!(
        "rank {}: exchanged {} triples out, {} in ({} from B)",
        ctx.rank(),
        stats.sent,
        stats.received,
        update.len()
    );
    stats.exchange_s = clock.lap();

    let (h, w) = a_layout.rank_block_dims(ctx.rank());
    let base = build_local_matrix(base, h, w, nthreads)?;
    let update = build_local_matrix(update, h, w, nthreads)?;
    stats.build_s = clock.lap();

    let out = local_add(&base, &update, op)?;
    stats.add_s = clock.lap();
    Ok((out, stats))
}
