//! Index vectors: one 1-based integer per line.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};

/// Parses 1-based indices into 0-based ones, each required to be below `bound`.
pub fn parse_index_vector<R: BufRead>(reader: R, bound: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (k, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = k + 1;
        let tok = line.trim();
        let column = line.len() - line.trim_start().len() + 1;
        let v: usize = tok.parse().map_err(|_| Error::Parse {
            line: lineno,
            column,
            message: format!("expected a positive integer, found '{tok}'"),
        })?;
        if v == 0 {
            return Err(Error::Parse {
                line: lineno,
                column,
                message: "indices are 1-based".to_string(),
            });
        }
        if v > bound {
            return Err(Error::IndexOutOfBounds {
                what: "index vector",
                index: v - 1,
                bound,
            });
        }
        out.push(v - 1);
    }
    Ok(out)
}

pub fn read_index_vector(path: impl AsRef<Path>, bound: usize) -> Result<Vec<usize>> {
    parse_index_vector(BufReader::new(File::open(path)?), bound)
}

pub fn render_index_vector<W: Write>(v: &[usize], mut out: W) -> Result<()> {
    for &i in v {
        writeln!(out, "{}", i + 1)?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_index_vector(v: &[usize], path: impl AsRef<Path>) -> Result<()> {
    render_index_vector(v, BufWriter::new(File::create(path)?))
}
