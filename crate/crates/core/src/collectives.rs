//! Simulated message-passing runtime.
//!
//! [`run_ranks`] starts one thread per rank and hands each a [`RankContext`].
//! Collectives rendezvous in a shared [`Mediator`]: every rank deposits its
//! outgoing payloads for the round, the last arrival opens the round, and each
//! rank then drains the payloads addressed to it, ordered by source rank.
//!
//! A round can only complete when all `p` ranks join it. A rank that returns
//! (or fails) while another is waiting, or a rank that calls a different
//! collective than its peers, aborts the run with an error instead of hanging.

use std::any::Any;
use std::panic::{self, AssertUnwindSafe};
use std::sync::{Condvar, Mutex, MutexGuard};

use crate::error::{Error, Result};
use crate::grid::ProcGrid;

type Payload = Box<dyn Any + Send>;

#[derive(Debug, PartialEq, Eq, Clone, Copy)]
enum Phase {
    Collecting,
    Draining,
}

#[derive(Debug)]
struct Round {
    phase: Phase,
    number: u64,
    arrived: usize,
    drained: usize,
    signature: Option<String>,
    /// `inbox[dst][src]`
    inbox: Vec<Vec<Option<Payload>>>,
    finished: usize,
    abort: Option<Abort>,
}

#[derive(Debug, Clone)]
enum Abort {
    Deadlock {
        rank: usize,
        round: u64,
    },
    Mismatch {
        round: u64,
        rank: usize,
        expected: String,
        found: String,
    },
    Failed,
}

impl Abort {
    fn to_error(&self) -> Error {
        match self.clone() {
            Abort::Deadlock { rank, round } => Error::Deadlock { rank, round },
            Abort::Mismatch {
                round,
                rank,
                expected,
                found,
            } => Error::CollectiveMismatch {
                round,
                rank,
                expected,
                found,
            },
            Abort::Failed => Error::Aborted,
        }
    }
}

/// Rendezvous point shared by all ranks of one run.
#[derive(Debug)]
pub struct Mediator {
    p: usize,
    state: Mutex<Round>,
    cv: Condvar,
}

impl Mediator {
    fn new(p: usize) -> Self {
        Mediator {
            p,
            state: Mutex::new(Round {
                phase: Phase::Collecting,
                number: 0,
                arrived: 0,
                drained: 0,
                signature: None,
                inbox: (0..p).map(|_| (0..p).map(|_| None).collect()).collect(),
                finished: 0,
                abort: None,
            }),
            cv: Condvar::new(),
        }
    }

    fn lock(&self) -> MutexGuard<'_, Round> {
        // A rank panicking outside the mediator never poisons it; recover anyway.
        self.state.lock().unwrap_or_else(|e| e.into_inner())
    }

    fn abort(&self, st: &mut Round, why: Abort) -> Error {
        if st.abort.is_none() {
            st.abort = Some(why);
        }
        self.cv.notify_all();
        st.abort.as_ref().unwrap().to_error()
    }

    /// One all-to-all round: `outgoing[d]` goes to rank `d`; the result holds
    /// one payload per source rank, in source order.
    fn exchange(&self, rank: usize, signature: String, outgoing: Vec<Payload>) -> Result<Vec<Payload>> {
        debug_assert_eq!(outgoing.len(), self.p);
        let mut st = self.lock();
        while st.phase == Phase::Draining && st.abort.is_none() {
            st = self.cv.wait(st).unwrap_or_else(|e| e.into_inner());
        }
        if let Some(a) = &st.abort {
            return Err(a.to_error());
        }
        let round = st.number;
        if st.finished > 0 {
            return Err(self.abort(&mut st, Abort::Deadlock { rank, round }));
        }
        match &st.signature {
            Some(expected) if *expected != signature => {
                let expected = expected.clone();
                return Err(self.abort(
                    &mut st,
                    Abort::Mismatch {
                        round,
                        rank,
                        expected,
                        found: signature,
                    },
                ));
            }
            Some(_) => {}
            None => st.signature = Some(signature),
        }
        for (dst, payload) in outgoing.into_iter().enumerate() {
            st.inbox[dst][rank] = Some(payload);
        }
        st.arrived += 1;
        if st.arrived == self.p {
            st.phase = Phase::Draining;
            self.cv.notify_all();
        } else {
            while !(st.phase == Phase::Draining && st.number == round) && st.abort.is_none() {
                st = self.cv.wait(st).unwrap_or_else(|e| e.into_inner());
            }
            if let Some(a) = &st.abort {
                return Err(a.to_error());
            }
        }
        let received: Vec<Payload> = st.inbox[rank]
            .iter_mut()
            .map(|slot| slot.take().expect("every source deposits before draining"))
            .collect();
        st.drained += 1;
        if st.drained == self.p {
            st.phase = Phase::Collecting;
            st.number += 1;
            st.arrived = 0;
            st.drained = 0;
            st.signature = None;
            self.cv.notify_all();
        }
        Ok(received)
    }

    fn finish(&self, rank: usize, failed: bool) {
        let mut st = self.lock();
        st.finished += 1;
        if failed {
            self.abort(&mut st, Abort::Failed);
        } else if st.arrived > 0 && st.phase == Phase::Collecting {
            let round = st.number;
            self.abort(&mut st, Abort::Deadlock { rank, round });
        }
    }
}

/// Per-rank handle passed to the program run by [`run_ranks`].
#[derive(Debug)]
pub struct RankContext<'a> {
    rank: usize,
    grid: ProcGrid,
    mediator: &'a Mediator,
}

impl<'a> RankContext<'a> {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn grid(&self) -> ProcGrid {
        self.grid
    }

    pub fn size(&self) -> usize {
        self.grid.size()
    }

    /// Grid coordinates `(r, c)` of this rank.
    pub fn coords(&self) -> (usize, usize) {
        self.grid.coords_of(self.rank)
    }

    /// Variable-count all-to-all. `send[d]` is delivered to rank `d`; the
    /// returned vector holds, for every source rank `s` in order, what `s`
    /// sent here.
    pub fn alltoallv<T: Send + 'static>(&self, send: Vec<Vec<T>>) -> Result<Vec<Vec<T>>> {
        let p = self.size();
        if send.len() != p {
            return Err(Error::DimensionMismatch(format!(
                "alltoallv needs {p} destination buffers, got {}",
                send.len()
            )));
        }
        let outgoing = send.into_iter().map(|b| Box::new(b) as Payload).collect();
        let signature = format!("alltoallv<{}>", std::any::type_name::<T>());
        let received = self.mediator.exchange(self.rank, signature, outgoing)?;
        Ok(received
            .into_iter()
            .map(|b| *b.downcast::<Vec<T>>().expect("signature pins the element type"))
            .collect())
    }

    /// Concatenates `local` from every member of `band`, in band order. Every
    /// rank must call this in the same round, each with its own band (e.g. all
    /// ranks gathering along their own grid row).
    pub fn allgather_band<T: Clone + Send + 'static>(&self, band: &[usize], local: Vec<T>) -> Result<Vec<T>> {
        let p = self.size();
        if !band.contains(&self.rank) || band.iter().any(|&b| b >= p) {
            return Err(Error::DimensionMismatch(format!(
                "rank {} called allgather_band with band {band:?}",
                self.rank
            )));
        }
        let mut outgoing: Vec<Payload> = (0..p)
            .map(|_| Box::new(None::<(Vec<usize>, Vec<T>)>) as Payload)
            .collect();
        for &dst in band {
            outgoing[dst] = Box::new(Some((band.to_vec(), local.clone())));
        }
        let signature = format!("allgather_band<{}>", std::any::type_name::<T>());
        let received = self.mediator.exchange(self.rank, signature, outgoing)?;
        let mut from: Vec<Option<(Vec<usize>, Vec<T>)>> = received
            .into_iter()
            .map(|b| {
                *b.downcast::<Option<(Vec<usize>, Vec<T>)>>()
                    .expect("signature pins the element type")
            })
            .collect();
        let mut out = Vec::new();
        for &src in band {
            match from[src].take() {
                Some((their_band, data)) if their_band == band => out.extend(data),
                Some((their_band, _)) => {
                    return Err(Error::CollectiveMismatch {
                        round: 0,
                        rank: src,
                        expected: format!("band {band:?}"),
                        found: format!("band {their_band:?}"),
                    })
                }
                None => {
                    return Err(Error::CollectiveMismatch {
                        round: 0,
                        rank: src,
                        expected: format!("band {band:?}"),
                        found: "a band excluding this rank".to_string(),
                    })
                }
            }
        }
        if let Some(src) = from.iter().position(Option::is_some) {
            return Err(Error::CollectiveMismatch {
                round: 0,
                rank: src,
                expected: format!("band {band:?}"),
                found: "a band including this rank".to_string(),
            });
        }
        Ok(out)
    }
}

fn panic_message(e: &(dyn Any + Send)) -> String {
    if let Some(s) = e.downcast_ref::<&str>() {
        (*s).to_string()
    } else if let Some(s) = e.downcast_ref::<String>() {
        s.clone()
    } else {
        "non-string panic payload".to_string()
    }
}

/// Runs `program` once per rank of a `p`-rank grid and collects the results
/// by rank id. If any rank fails, the root-cause error (a panic, or the
/// lowest-ranked program error that is not itself a consequence of another
/// rank failing) is returned.
pub fn run_ranks<T, F>(p: usize, program: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&RankContext<'_>) -> Result<T> + Sync,
{
    let grid = ProcGrid::new(p)?;
    log::debug!("launching {p} ranks on a {0}x{0} grid", grid.side());
    let mediator = Mediator::new(p);
    let outcomes: Vec<Result<T>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..p)
            .map(|rank| {
                let mediator = &mediator;
                let program = &program;
                std::thread::Builder::new()
                    .name(format!("rank-{rank}"))
                    .spawn_scoped(s, move || {
                        let ctx = RankContext { rank, grid, mediator };
                        let out = panic::catch_unwind(AssertUnwindSafe(|| program(&ctx)));
                        let out = match out {
                            Ok(r) => r,
                            Err(e) => Err(Error::RankPanic {
                                rank,
                                message: panic_message(e.as_ref()),
                            }),
                        };
                        mediator.finish(rank, out.is_err());
                        out
                    })
                    .expect("spawn rank thread")
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("rank threads catch their own panics"))
            .collect()
    });

    let mut results = Vec::with_capacity(p);
    let mut primary: Option<Error> = None;
    let mut secondary: Option<Error> = None;
    for out in outcomes {
        match out {
            Ok(v) => results.push(v),
            Err(e) => {
                let slot = if e.is_secondary() { &mut secondary } else { &mut primary };
                let replace = match (&*slot, &e) {
                    (None, _) => true,
                    (Some(Error::RankPanic { .. }), _) => false,
                    (Some(_), Error::RankPanic { .. }) => true,
                    _ => false,
                };
                if replace {
                    *slot = Some(e);
                }
            }
        }
    }
    match primary.or(secondary) {
        Some(e) => Err(e),
        None => Ok(results),
    }
}
