use std::fs::OpenOptions;
use std::path::Path;

use hipkernels::metrics::PhaseMetrics;
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct MetricsRow<'a> {
    pub op: &'a str,
    pub matrix: String,
    pub procs: usize,
    pub threads: usize,
    pub seed: Option<u64>,
    pub phase_gather_s: f64,
    pub phase_local_s: f64,
    pub phase_exchange_s: f64,
    pub phase_build_s: f64,
    pub phase_add_s: f64,
    pub triples_exchanged: usize,
    pub imbalance_before: Option<f64>,
    pub imbalance_after: Option<f64>,
}

impl<'a> MetricsRow<'a> {
    pub fn new(op: &'a str, matrix: &Path, procs: usize, threads: usize, seed: Option<u64>, m: &PhaseMetrics) -> Self {
        MetricsRow {
            op,
            matrix: matrix.display().to_string(),
            procs,
            threads,
            seed,
            phase_gather_s: m.gather_s,
            phase_local_s: m.local_s,
            phase_exchange_s: m.exchange_s,
            phase_build_s: m.build_s,
            phase_add_s: m.add_s,
            triples_exchanged: m.triples_exchanged(),
            imbalance_before: m.imbalance_before,
            imbalance_after: m.imbalance_after,
        }
    }
}

/// Appends `row`, writing the header first if the file is new or empty.
pub fn append(path: &Path, row: &MetricsRow<'_>) -> csv::Result<()> {
    let file = OpenOptions::new().create(true).append(true).open(path)?;
    let fresh = file.metadata()?.len() == 0;
    let mut w = csv::WriterBuilder::new().has_headers(fresh).from_writer(file);
    w.serialize(row)?;
    w.flush()?;
    Ok(())
}
