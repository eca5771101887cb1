//! Brute-force dense references for permute, extract and assign.
//!
//! Deliberately naive: a row-major grid of optional values and double loops.
//! Nothing here calls into the kernels or the distributed operations.

#![allow(clippy::needless_range_loop)]

use crate::error::{Error, Result};
use crate::types::{AddOp, Value};

/// Dense matrix where `None` is a structural zero.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseRef {
    m: usize,
    n: usize,
    cells: Vec<Option<Value>>,
}

impl DenseRef {
    pub fn new(m: usize, n: usize) -> Self {
        DenseRef {
            m,
            n,
            cells: vec![None; m * n],
        }
    }

    pub fn from_entries(m: usize, n: usize, entries: &[(usize, usize, Value)]) -> Result<Self> {
        let mut d = DenseRef::new(m, n);
        for &(i, j, v) in entries {
            if i >= m || j >= n {
                return Err(Error::IndexOutOfBounds {
                    what: "entry",
                    index: if i >= m { i } else { j },
                    bound: if i >= m { m } else { n },
                });
            }
            if d.get(i, j).is_some() {
                return Err(Error::DuplicateEntry { row: i, col: j });
            }
            d.set(i, j, Some(v));
        }
        Ok(d)
    }

    pub fn nrows(&self) -> usize {
        self.m
    }

    pub fn ncols(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Option<Value> {
        self.cells[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Option<Value>) {
        self.cells[i * self.n + j] = v;
    }

    pub fn nnz(&self) -> usize {
        self.cells.iter().filter(|c| c.is_some()).count()
    }

    /// Present entries sorted by (column, row).
    pub fn entries(&self) -> Vec<(usize, usize, Value)> {
        let mut out = Vec::new();
        for j in 0..self.n {
            for i in 0..self.m {
                if let Some(v) = self.get(i, j) {
                    out.push((i, j, v));
                }
            }
        }
        out
    }
}

fn check_bijection(v: &[usize], n: usize) -> Result<()> {
    if v.len() != n {
        return Err(Error::NotAPermutation(format!("length {} for dimension {n}", v.len())));
    }
    let mut seen = vec![false; n];
    for &x in v {
        if x >= n || seen[x] {
            return Err(Error::NotAPermutation(format!("value {x}")));
        }
        seen[x] = true;
    }
    Ok(())
}

fn check_selection(v: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    for &x in v {
        if x >= n {
            return Err(Error::IndexOutOfBounds {
                what: "index vector",
                index: x,
                bound: n,
            });
        }
        if seen[x] {
            return Err(Error::DuplicateIndex { index: x });
        }
        seen[x] = true;
    }
    Ok(())
}

/// `A'[i, j] = A[pvec[i], qvec[j]]`.
pub fn oracle_permute(a: &DenseRef, pvec: &[usize], qvec: &[usize]) -> Result<DenseRef> {
    check_bijection(pvec, a.m)?;
    check_bijection(qvec, a.n)?;
    let mut out = DenseRef::new(a.m, a.n);
    for i in 0..a.m {
        for j in 0..a.n {
            out.set(i, j, a.get(pvec[i], qvec[j]));
        }
    }
    Ok(out)
}

/// `B[i, j] = A[pvec[i], qvec[j]]`, a `|pvec| x |qvec|` matrix.
pub fn oracle_extract(a: &DenseRef, pvec: &[usize], qvec: &[usize]) -> Result<DenseRef> {
    check_selection(pvec, a.m)?;
    check_selection(qvec, a.n)?;
    let mut out = DenseRef::new(pvec.len(), qvec.len());
    for i in 0..pvec.len() {
        for j in 0..qvec.len() {
            out.set(i, j, a.get(pvec[i], qvec[j]));
        }
    }
    Ok(out)
}

/// Copy of `A` with every present `B[i, j]` combined into
/// `A[pvec[i], qvec[j]]`.
pub fn oracle_assign(a: &DenseRef, b: &DenseRef, pvec: &[usize], qvec: &[usize], op: AddOp) -> Result<DenseRef> {
    if pvec.len() != b.m || qvec.len() != b.n {
        return Err(Error::DimensionMismatch(format!(
            "index vectors {}x{} for a {}x{} source",
            pvec.len(),
            qvec.len(),
            b.m,
            b.n
        )));
    }
    check_selection(pvec, a.m)?;
    check_selection(qvec, a.n)?;
    let mut out = a.clone();
    for i in 0..b.m {
        for j in 0..b.n {
            let Some(incoming) = b.get(i, j) else { continue };
            let merged = match (out.get(pvec[i], qvec[j]), op) {
                (None, _) => incoming,
                (Some(x), AddOp::Sum) => x + incoming,
                (Some(_), AddOp::SelectSecond) => incoming,
                (Some(x), AddOp::LogicalOr) => {
                    if x != 0.0 || incoming != 0.0 {
                        1.0
                    } else {
                        0.0
                    }
                }
            };
            out.set(pvec[i], qvec[j], Some(merged));
        }
    }
    Ok(out)
}
