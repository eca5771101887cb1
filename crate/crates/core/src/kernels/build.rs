//! Build step: sort received triples column-major and pack them into DCSC.
//!
//! The concatenated receive buffer is cut into `4 * nthreads` equal chunks,
//! each chunk is sorted independently, and the sorted runs are combined with a
//! multiway merge. The merge is parallel over key ranges: splitter keys taken
//! from the longest run divide every run into `nthreads` aligned slices, and
//! thread `t` merges slice `t` of every run. Keys are unique in valid input,
//! so the result is independent of chunking and thread count.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::{for_each_thread, for_each_thread_with};
use crate::dcsc::LocalDcsc;
use crate::error::{Error, Result};
use crate::types::Triple;

fn merge_runs(runs: &[&[Triple]]) -> Vec<Triple> {
    let total = runs.iter().map(|r| r.len()).sum();
    let mut out = Vec::with_capacity(total);
    let mut heap: BinaryHeap<Reverse<((usize, usize), usize)>> = BinaryHeap::with_capacity(runs.len());
    let mut pos = vec![0usize; runs.len()];
    for (k, run) in runs.iter().enumerate() {
        if let Some(first) = run.first() {
            heap.push(Reverse((first.key(), k)));
        }
    }
    while let Some(Reverse((_, k))) = heap.pop() {
        out.push(runs[k][pos[k]]);
        pos[k] += 1;
        if let Some(next) = runs[k].get(pos[k]) {
            heap.push(Reverse((next.key(), k)));
        }
    }
    out
}

/// Sorts by `(lcol, lrow)` using chunked sorting plus a parallel multiway merge.
pub fn sort_triples_chunked(mut triples: Vec<Triple>, nthreads: usize) -> Vec<Triple> {
    let nthreads = nthreads.max(1);
    let n = triples.len();
    if n < 2 {
        return triples;
    }
    let nchunks = 4 * nthreads;
    let chunk_len = n.div_ceil(nchunks);

    // Deal chunks round-robin to threads and sort them in place.
    let mut per_thread: Vec<Vec<&mut [Triple]>> = (0..nthreads).map(|_| Vec::new()).collect();
    for (c, chunk) in triples.chunks_mut(chunk_len).enumerate() {
        per_thread[c % nthreads].push(chunk);
    }
    for_each_thread_with(per_thread, |_, chunks| {
        for chunk in chunks {
            chunk.sort_unstable_by_key(Triple::key);
        }
    });

    let runs: Vec<&[Triple]> = triples.chunks(chunk_len).collect();
    if nthreads == 1 {
        return merge_runs(&runs);
    }

    let longest = runs.iter().max_by_key(|r| r.len()).expect("n >= 2");
    let splitters: Vec<(usize, usize)> = (1..nthreads)
        .map(|t| longest[t * longest.len() / nthreads].key())
        .collect();
    let slice_bounds = |run: &[Triple], t: usize| {
        let lo = if t == 0 {
            0
        } else {
            run.partition_point(|x| x.key() < splitters[t - 1])
        };
        let hi = if t + 1 == nthreads {
            run.len()
        } else {
            run.partition_point(|x| x.key() < splitters[t])
        };
        lo..hi.max(lo)
    };
    let pieces: Vec<Vec<Triple>> = for_each_thread(nthreads, |t| {
        let slices: Vec<&[Triple]> = runs.iter().map(|r| &r[slice_bounds(r, t)]).collect();
        merge_runs(&slices)
    });
    pieces.concat()
}

/// Builds a local block from received triples (any order, any source
/// interleaving). Duplicate coordinates are rejected.
pub fn build_local_matrix(recv: Vec<Triple>, nrows: usize, ncols: usize, nthreads: usize) -> Result<LocalDcsc> {
    if let Some(t) = recv.iter().find(|t| t.lrow >= nrows || t.lcol >= ncols) {
        let (what, index, bound) = if t.lrow >= nrows {
            ("local row", t.lrow, nrows)
        } else {
            ("local column", t.lcol, ncols)
        };
        return Err(Error::IndexOutOfBounds { what, index, bound });
    }
    let sorted = sort_triples_chunked(recv, nthreads);
    LocalDcsc::from_sorted_triples(&sorted, nrows, ncols)
}
