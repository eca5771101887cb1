//! Phase timings, exchange volume and load imbalance.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::ops::DistMatrix;

/// Timings and exchange counts recorded by one rank during one operation.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct RankStats {
    pub gather_s: f64,
    pub local_s: f64,
    pub exchange_s: f64,
    pub build_s: f64,
    pub add_s: f64,
    /// Triples this rank put into the exchange (self-sends included).
    pub sent: usize,
    /// Triples this rank took out of the exchange.
    pub received: usize,
}

/// Lap timer for the phases of one rank.
#[derive(Debug)]
pub(crate) struct PhaseClock(Instant);

impl PhaseClock {
    pub(crate) fn start() -> Self {
        PhaseClock(Instant::now())
    }

    /// Seconds since the previous lap.
    pub(crate) fn lap(&mut self) -> f64 {
        let now = Instant::now();
        let s = now.duration_since(self.0).as_secs_f64();
        self.0 = now;
        s
    }
}

/// Per-rank statistics of one collective operation.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct OpReport {
    pub per_rank: Vec<RankStats>,
}

/// Aggregated view of an [`OpReport`]: each phase is the slowest rank's time.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PhaseMetrics {
    pub gather_s: f64,
    pub local_s: f64,
    pub exchange_s: f64,
    pub build_s: f64,
    pub add_s: f64,
    pub sent_per_rank: Vec<usize>,
    pub received_per_rank: Vec<usize>,
    pub imbalance_before: Option<f64>,
    pub imbalance_after: Option<f64>,
}

impl OpReport {
    pub fn triples_exchanged(&self) -> usize {
        self.per_rank.iter().map(|r| r.sent).sum()
    }

    pub fn triples_received(&self) -> usize {
        self.per_rank.iter().map(|r| r.received).sum()
    }

    pub fn phases(&self) -> PhaseMetrics {
        let max = |f: fn(&RankStats) -> f64| self.per_rank.iter().map(f).fold(0.0, f64::max);
        PhaseMetrics {
            gather_s: max(|r| r.gather_s),
            local_s: max(|r| r.local_s),
            exchange_s: max(|r| r.exchange_s),
            build_s: max(|r| r.build_s),
            add_s: max(|r| r.add_s),
            sent_per_rank: self.per_rank.iter().map(|r| r.sent).collect(),
            received_per_rank: self.per_rank.iter().map(|r| r.received).collect(),
            imbalance_before: None,
            imbalance_after: None,
        }
    }
}

impl PhaseMetrics {
    pub fn triples_exchanged(&self) -> usize {
        self.sent_per_rank.iter().sum()
    }
}

/// Largest per-rank nnz over the mean per-rank nnz.
pub fn imbalance_of_counts(per_rank_nnz: &[usize]) -> Result<f64> {
    let total: usize = per_rank_nnz.iter().sum();
    if total == 0 {
        return Err(Error::EmptyMatrix);
    }
    let max = *per_rank_nnz.iter().max().expect("nonzero total implies a rank");
    Ok(max as f64 * per_rank_nnz.len() as f64 / total as f64)
}

pub fn load_imbalance(dm: &DistMatrix) -> Result<f64> {
    imbalance_of_counts(&dm.local_nnz())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn imbalance_examples() {
        assert_eq!(imbalance_of_counts(&[10, 10, 10, 10]).unwrap(), 1.0);
        assert_eq!(imbalance_of_counts(&[40, 0, 0, 0]).unwrap(), 4.0);
        assert_eq!(imbalance_of_counts(&[3]).unwrap(), 1.0);
        assert!(matches!(imbalance_of_counts(&[0, 0]), Err(Error::EmptyMatrix)));
    }

    #[test]
    fn phases_take_slowest_rank() {
        let report = OpReport {
            per_rank: vec![
                RankStats {
                    gather_s: 1.0,
                    build_s: 0.5,
                    sent: 3,
                    received: 1,
                    ..Default::default()
                },
                RankStats {
                    gather_s: 0.25,
                    build_s: 2.0,
                    sent: 1,
                    received: 3,
                    ..Default::default()
                },
            ],
        };
        let m = report.phases();
        assert_eq!((m.gather_s, m.build_s), (1.0, 2.0));
        assert_eq!(m.triples_exchanged(), 4);
        assert_eq!(report.triples_received(), 4);
    }
}
