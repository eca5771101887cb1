#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hipkernels::io::{write_index_vector, write_matrix_market, CooMatrix, SplitMix64};

pub fn hipkernels(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hipkernels"))
        .args(args)
        .current_dir(dir)
        .env_remove("HIPKERNELS_LOG")
        .output()
        .expect("run hipkernels binary")
}

/// Random matrix with quarter-integer values.
pub fn random_coo(m: usize, n: usize, density: f64, seed: u64) -> CooMatrix {
    let mut r = SplitMix64::new(seed);
    let mut entries = Vec::new();
    for j in 0..n {
        for i in 0..m {
            if (r.next_u64() >> 11) as f64 / (1u64 << 53) as f64 <= density {
                entries.push((i, j, r.below(801) as f64 / 4.0 - 100.0));
            }
        }
    }
    CooMatrix::new(m, n, entries).unwrap()
}

pub fn save(dir: &Path, name: &str, m: &CooMatrix) -> PathBuf {
    let p = dir.join(name);
    write_matrix_market(m, &p).unwrap();
    p
}

pub fn save_vec(dir: &Path, name: &str, v: &[usize]) -> PathBuf {
    let p = dir.join(name);
    write_index_vector(v, &p).unwrap();
    p
}

pub fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap()
}

pub const METRICS_HEADER: [&str; 13] = [
    "op",
    "matrix",
    "procs",
    "threads",
    "seed",
    "phase_gather_s",
    "phase_local_s",
    "phase_exchange_s",
    "phase_build_s",
    "phase_add_s",
    "triples_exchanged",
    "imbalance_before",
    "imbalance_after",
];

/// Checks the metrics file against the fixed schema and returns its rows.
pub fn metrics_rows(path: &Path) -> Result<Vec<Vec<String>>, String> {
    let text = read(path);
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().ok_or("empty metrics file")?.split(',').collect();
    if header != METRICS_HEADER {
        return Err(format!("header {header:?}"));
    }
    let mut rows = Vec::new();
    for line in lines {
        let f: Vec<String> = line.split(',').map(str::to_string).collect();
        if f.len() != 13 {
            return Err(format!("row with {} fields: {line}", f.len()));
        }
        for k in [2, 3, 10] {
            f[k].parse::<usize>()
                .map_err(|_| format!("field {} not an integer: {line}", METRICS_HEADER[k]))?;
        }
        for k in 5..10 {
            let v: f64 = f[k]
                .parse()
                .map_err(|_| format!("field {} not a number: {line}", METRICS_HEADER[k]))?;
            if v < 0.0 {
                return Err(format!("negative phase time: {line}"));
            }
        }
        for k in [4] {
            if !f[k].is_empty() {
                f[k].parse::<u64>().map_err(|_| format!("bad seed: {line}"))?;
            }
        }
        for k in [11, 12] {
            if !f[k].is_empty() {
                let v: f64 = f[k].parse().map_err(|_| format!("bad imbalance: {line}"))?;
                if v < 1.0 {
                    return Err(format!("imbalance below 1: {line}"));
                }
            }
        }
        rows.push(f);
    }
    Ok(rows)
}
