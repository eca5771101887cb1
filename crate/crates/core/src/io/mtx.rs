//! Matrix Market coordinate files.

use std::collections::HashSet;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use super::CooMatrix;
use crate::error::{Error, Result};
use crate::types::Value;

#[derive(Clone, Copy, PartialEq)]
enum Field {
    Real,
    Integer,
    Pattern,
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens with their 1-based starting columns.
fn tokens(s: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut rest = s;
    let mut offset = 0;
    std::iter::from_fn(move || {
        let skip = rest.len() - rest.trim_start().len();
        rest = &rest[skip..];
        offset += skip;
        if rest.is_empty() {
            return None;
        }
        let len = rest.find(char::is_whitespace).unwrap_or(rest.len());
        let tok = (offset + 1, &rest[..len]);
        rest = &rest[len..];
        offset += len;
        Some(tok)
    })
}

fn parse_header(line: &str, lineno: usize) -> Result<(Field, bool)> {
    let toks: Vec<(usize, &str)> = tokens(line).collect();
    if toks.len() != 5 || !toks[0].1.eq_ignore_ascii_case("%%MatrixMarket") {
        return Err(parse_err(
            lineno,
            1,
            "expected '%%MatrixMarket matrix coordinate <field> <symmetry>'",
        ));
    }
    let lower: Vec<String> = toks.iter().map(|t| t.1.to_ascii_lowercase()).collect();
    if lower[1] != "matrix" {
        return Err(Error::UnsupportedFormat(format!("object '{}'", toks[1].1)));
    }
    if lower[2] != "coordinate" {
        return Err(Error::UnsupportedFormat(format!("format '{}'", toks[2].1)));
    }
    let field = match lower[3].as_str() {
        "real" => Field::Real,
        "integer" => Field::Integer,
        "pattern" => Field::Pattern,
        _ => return Err(Error::UnsupportedFormat(format!("field '{}'", toks[3].1))),
    };
    let symmetric = match lower[4].as_str() {
        "general" => false,
        "symmetric" => true,
        _ => return Err(Error::UnsupportedFormat(format!("symmetry '{}'", toks[4].1))),
    };
    Ok((field, symmetric))
}

fn parse_usize(tok: (usize, &str), lineno: usize, what: &str) -> Result<usize> {
    tok.1
        .parse()
        .map_err(|_| parse_err(lineno, tok.0, format!("invalid {what} '{}'", tok.1)))
}

fn parse_index(tok: (usize, &str), lineno: usize, bound: usize, what: &str) -> Result<usize> {
    let v = parse_usize(tok, lineno, what)?;
    if v == 0 || v > bound {
        return Err(parse_err(lineno, tok.0, format!("{what} {v} outside 1..={bound}")));
    }
    Ok(v - 1)
}

fn parse_value(tok: (usize, &str), lineno: usize, field: Field) -> Result<Value> {
    let v = match field {
        Field::Integer => tok.1.parse::<i64>().map(|v| v as Value).ok(),
        _ => tok.1.parse::<Value>().ok().filter(|v| v.is_finite()),
    };
    v.ok_or_else(|| parse_err(lineno, tok.0, format!("invalid value '{}'", tok.1)))
}

/// Parses a Matrix Market coordinate stream into 0-based entries.
///
/// Pattern entries get value 1.0. Symmetric files are expanded so both
/// triangles are stored. Array, complex, skew-symmetric and Hermitian files
/// are rejected as unsupported; repeated coordinates (including a mirrored
/// pair in a symmetric file) are rejected as duplicates.
pub fn parse_matrix_market<R: BufRead>(reader: R) -> Result<CooMatrix> {
    let mut lines = reader.lines().enumerate().map(|(k, l)| (k + 1, l));
    let (field, symmetric) = match lines.next() {
        Some((n, line)) => parse_header(&line?, n)?,
        None => return Err(parse_err(1, 1, "empty input")),
    };

    let mut size = None;
    let mut entries = Vec::new();
    let mut seen = HashSet::new();
    let mut declared = 0;
    let mut listed = 0;
    let mut last_line = 1;
    for (lineno, line) in lines {
        let line = line?;
        last_line = lineno;
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        let toks: Vec<(usize, &str)> = tokens(&line).collect();
        let Some((m, n)) = size else {
            if toks.len() != 3 {
                return Err(parse_err(lineno, 1, "expected 'rows cols entries'"));
            }
            let m = parse_usize(toks[0], lineno, "row count")?;
            let n = parse_usize(toks[1], lineno, "column count")?;
            declared = parse_usize(toks[2], lineno, "entry count")?;
            if symmetric && m != n {
                return Err(parse_err(lineno, 1, "symmetric matrix must be square"));
            }
            size = Some((m, n));
            continue;
        };

        if listed == declared {
            return Err(parse_err(
                lineno,
                1,
                format!("more than the declared {declared} entries"),
            ));
        }
        let expected = if field == Field::Pattern { 2 } else { 3 };
        if toks.len() != expected {
            let col = toks.get(expected).map_or(line.len() + 1, |t| t.0);
            return Err(parse_err(
                lineno,
                col,
                format!("expected {expected} fields, found {}", toks.len()),
            ));
        }
        let i = parse_index(toks[0], lineno, m, "row")?;
        let j = parse_index(toks[1], lineno, n, "column")?;
        let v = if field == Field::Pattern {
            1.0
        } else {
            parse_value(toks[2], lineno, field)?
        };
        listed += 1;
        let mirrored = (symmetric && i != j).then_some((j, i));
        for (r, c) in std::iter::once((i, j)).chain(mirrored) {
            if !seen.insert((r, c)) {
                return Err(Error::DuplicateEntry { row: r, col: c });
            }
            entries.push((r, c, v));
        }
    }
    let Some((m, n)) = size else {
        return Err(parse_err(last_line + 1, 1, "missing size line"));
    };
    if listed != declared {
        return Err(parse_err(
            last_line + 1,
            1,
            format!("declared {declared} entries, found {listed}"),
        ));
    }
    CooMatrix::new(m, n, entries)
}

pub fn read_matrix_market(path: impl AsRef<Path>) -> Result<CooMatrix> {
    parse_matrix_market(BufReader::new(File::open(path)?))
}

/// Writes `m` as a general real coordinate file, 1-based, sorted by
/// (column, row). Values use the shortest text that parses back exactly.
pub fn render_matrix_market<W: Write>(m: &CooMatrix, mut out: W) -> Result<()> {
    let mut entries = m.entries().to_vec();
    entries.sort_unstable_by_key(|&(i, j, _)| (j, i));
    writeln!(out, "%%MatrixMarket matrix coordinate real general")?;
    writeln!(out, "{} {} {}", m.nrows(), m.ncols(), entries.len())?;
    for (i, j, v) in entries {
        writeln!(out, "{} {} {}", i + 1, j + 1, v)?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_matrix_market(m: &CooMatrix, path: impl AsRef<Path>) -> Result<()> {
    render_matrix_market(m, BufWriter::new(File::create(path)?))
}
