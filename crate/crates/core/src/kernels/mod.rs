//! Per-rank multithreaded local computations.
//!
//! Send-buffer preparation runs in two passes over the same thread partition.
//! Pass one counts, per thread and destination rank, how many triples will be
//! emitted (`nnz_counter`). Prefix sums over destinations give each rank's
//! base offset in the flat send buffer (`proc_pointer`), and prefix sums over
//! threads give each thread a private window inside every destination range
//! (`thread_offset`). Pass two writes each triple straight into its window, so
//! no two threads ever touch the same slot and the buffer contents do not
//! depend on the thread count.

mod add;
mod build;
mod extract;
mod send;

pub use add::local_add;
pub use build::{build_local_matrix, sort_triples_chunked};
pub use extract::{extract_prepare_send_buffer, SparsePair};
pub use send::{partition_columns, prepare_send_buffer};

use crate::types::Triple;

/// Destination-grouped send buffer with the offsets used to fill it.
#[derive(Clone, Debug, PartialEq)]
pub struct SendPlan {
    /// `nnz_counter[t][d]`: triples produced by thread `t` for rank `d`.
    pub nnz_counter: Vec<Vec<usize>>,
    /// Start of rank `d`'s slice; has `p + 1` entries, the last being the total.
    pub proc_pointer: Vec<usize>,
    /// `thread_offset[t][d]`: where thread `t` starts inside rank `d`'s slice.
    pub thread_offset: Vec<Vec<usize>>,
    pub buffer: Vec<Triple>,
}

impl SendPlan {
    pub fn nprocs(&self) -> usize {
        self.proc_pointer.len() - 1
    }

    pub fn len(&self) -> usize {
        self.buffer.len()
    }

    pub fn is_empty(&self) -> bool {
        self.buffer.is_empty()
    }

    /// Triples destined for rank `d`.
    pub fn slice_for(&self, d: usize) -> &[Triple] {
        &self.buffer[self.proc_pointer[d]..self.proc_pointer[d + 1]]
    }

    pub fn send_counts(&self) -> Vec<usize> {
        self.proc_pointer.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// Splits the flat buffer into one vector per destination rank.
    pub fn into_per_destination(self) -> Vec<Vec<Triple>> {
        let counts = self.send_counts();
        let mut it = self.buffer.into_iter();
        counts.into_iter().map(|n| it.by_ref().take(n).collect()).collect()
    }
}

/// Computes `(proc_pointer, thread_offset)` from `nnz_counter`.
pub fn send_offsets(nnz_counter: &[Vec<usize>], nprocs: usize) -> (Vec<usize>, Vec<Vec<usize>>) {
    let nthreads = nnz_counter.len();
    let mut proc_pointer = vec![0usize; nprocs + 1];
    let mut thread_offset = vec![vec![0usize; nprocs]; nthreads];
    for d in 0..nprocs {
        let mut running = 0;
        for t in 0..nthreads {
            thread_offset[t][d] = running;
            running += nnz_counter[t][d];
        }
        proc_pointer[d + 1] = proc_pointer[d] + running;
    }
    (proc_pointer, thread_offset)
}

/// Flat position of the `k`-th triple that thread `t` emits for rank `d`.
#[inline]
pub fn send_buffer_index(t: usize, d: usize, k: usize, proc_pointer: &[usize], thread_offset: &[Vec<usize>]) -> usize {
    proc_pointer[d] + thread_offset[t][d] + k
}

/// Runs `job(t)` for every `t < nthreads`, on scoped threads when `nthreads > 1`.
pub(crate) fn for_each_thread<R, F>(nthreads: usize, job: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync,
{
    for_each_thread_with((0..nthreads.max(1)).map(|_| ()).collect(), |t, ()| job(t))
}

/// Like [`for_each_thread`], moving `states[t]` into thread `t`.
pub(crate) fn for_each_thread_with<S, R, F>(states: Vec<S>, job: F) -> Vec<R>
where
    S: Send,
    R: Send,
    F: Fn(usize, S) -> R + Sync,
{
    if states.len() <= 1 {
        return states.into_iter().map(|s| job(0, s)).collect();
    }
    std::thread::scope(|scope| {
        let job = &job;
        let mut states = states.into_iter();
        let first = states.next().expect("at least two states");
        let handles: Vec<_> = states
            .enumerate()
            .map(|(i, st)| scope.spawn(move || job(i + 1, st)))
            .collect();
        let mut out = Vec::with_capacity(handles.len() + 1);
        out.push(job(0, first));
        out.extend(handles.into_iter().map(|h| h.join().expect("kernel thread panicked")));
        out
    })
}

/// Shared two-pass fill. `identify(t, emit)` must call `emit(dest, triple)` for
/// every triple of thread `t`'s part, in the same order on both calls.
pub(crate) fn two_pass_fill<F>(nthreads: usize, nprocs: usize, identify: F) -> SendPlan
where
    F: Fn(usize, &mut dyn FnMut(usize, Triple)) + Sync,
{
    let nnz_counter: Vec<Vec<usize>> = for_each_thread(nthreads, |t| {
        let mut counts = vec![0usize; nprocs];
        identify(t, &mut |d, _| counts[d] += 1);
        counts
    });
    let (proc_pointer, thread_offset) = send_offsets(&nnz_counter, nprocs);
    let total = proc_pointer[nprocs];
    let mut buffer = vec![Triple::default(); total];

    // Carve the buffer into disjoint (destination, thread) windows, laid out
    // destination-major exactly as proc_pointer/thread_offset describe.
    let mut windows: Vec<Vec<&mut [Triple]>> = (0..nthreads).map(|_| Vec::with_capacity(nprocs)).collect();
    let mut rest: &mut [Triple] = &mut buffer;
    for d in 0..nprocs {
        for (w, counts) in windows.iter_mut().zip(&nnz_counter) {
            let (head, tail) = std::mem::take(&mut rest).split_at_mut(counts[d]);
            w.push(head);
            rest = tail;
        }
    }
    debug_assert!(rest.is_empty());

    for_each_thread_with(windows, |t, mut mine| {
        let mut cursor = vec![0usize; nprocs];
        identify(t, &mut |d, triple| {
            mine[d][cursor[d]] = triple;
            cursor[d] += 1;
        });
    });

    SendPlan {
        nnz_counter,
        proc_pointer,
        thread_offset,
        buffer,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn offsets_small_example() {
        let counter = vec![vec![2, 1], vec![1, 3]];
        let (pp, to) = send_offsets(&counter, 2);
        assert_eq!(pp, [0, 3, 7]);
        assert_eq!(to, [vec![0, 0], vec![2, 1]]);
        assert_eq!(send_buffer_index(1, 1, 0, &pp, &to), 4);
    }

    #[test]
    fn single_slot() {
        let (pp, to) = send_offsets(&[vec![1]], 1);
        assert_eq!(send_buffer_index(0, 0, 0, &pp, &to), 0);
    }

    #[test]
    fn two_pass_fill_places_by_destination() {
        // Thread t emits, for each k < 3, one triple to rank (t + k) % 2.
        let plan = two_pass_fill(3, 2, |t, emit| {
            for k in 0..3 {
                emit((t + k) % 2, Triple::new(t, k, (10 * t + k) as f64));
            }
        });
        assert_eq!(plan.len(), 9);
        for d in 0..2 {
            assert!(plan.slice_for(d).iter().all(|tr| (tr.lrow + tr.lcol) % 2 == d));
        }
        // Thread order inside each destination slice.
        let rows: Vec<usize> = plan.slice_for(0).iter().map(|t| t.lrow).collect();
        assert_eq!(rows, [0, 0, 1, 2, 2]);
    }
}
