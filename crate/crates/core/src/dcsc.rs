//! Doubly compressed sparse column storage.
//!
//! Only columns holding at least one entry are listed, which keeps the
//! footprint proportional to nnz even when a block has far more columns than
//! nonzeros (the hypersparse case that fine 2D partitioning produces).

use crate::error::{Error, Result};
use crate::types::{Triple, Value};

#[derive(Clone, Debug, PartialEq)]
pub struct LocalDcsc {
    nrows: usize,
    ncols: usize,
    /// Nonzero column ids, strictly increasing.
    jc: Vec<usize>,
    /// `cp[k]..cp[k+1]` is the segment of `ir`/`num` for column `jc[k]`.
    cp: Vec<usize>,
    ir: Vec<usize>,
    num: Vec<Value>,
}

impl LocalDcsc {
    pub fn empty(nrows: usize, ncols: usize) -> Self {
        LocalDcsc {
            nrows,
            ncols,
            jc: Vec::new(),
            cp: vec![0],
            ir: Vec::new(),
            num: Vec::new(),
        }
    }

    /// Packs triples that are already sorted by `(lcol, lrow)`.
    pub fn from_sorted_triples(triples: &[Triple], nrows: usize, ncols: usize) -> Result<Self> {
        let mut jc = Vec::new();
        let mut cp = Vec::new();
        let mut ir = Vec::with_capacity(triples.len());
        let mut num = Vec::with_capacity(triples.len());
        let mut prev: Option<(usize, usize)> = None;
        for (pos, t) in triples.iter().enumerate() {
            if t.lrow >= nrows {
                return Err(Error::IndexOutOfBounds {
                    what: "local row",
                    index: t.lrow,
                    bound: nrows,
                });
            }
            if t.lcol >= ncols {
                return Err(Error::IndexOutOfBounds {
                    what: "local column",
                    index: t.lcol,
                    bound: ncols,
                });
            }
            let key = t.key();
            if let Some(p) = prev {
                if key == p {
                    return Err(Error::DuplicateCoordinate {
                        row: t.lrow,
                        col: t.lcol,
                    });
                }
                if key < p {
                    return Err(Error::UnsortedInput { position: pos });
                }
            }
            if prev.is_none_or(|p| p.0 != t.lcol) {
                jc.push(t.lcol);
                cp.push(ir.len());
            }
            ir.push(t.lrow);
            num.push(t.val);
            prev = Some(key);
        }
        cp.push(ir.len());
        Ok(LocalDcsc {
            nrows,
            ncols,
            jc,
            cp,
            ir,
            num,
        })
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.ir.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ir.is_empty()
    }

    pub fn jc(&self) -> &[usize] {
        &self.jc
    }

    pub fn cp(&self) -> &[usize] {
        &self.cp
    }

    pub fn ir(&self) -> &[usize] {
        &self.ir
    }

    pub fn num(&self) -> &[Value] {
        &self.num
    }

    /// Number of columns with at least one entry.
    pub fn nzc(&self) -> usize {
        self.jc.len()
    }

    /// Row ids and values of the `k`-th stored column.
    pub fn column(&self, k: usize) -> (&[usize], &[Value]) {
        let r = self.cp[k]..self.cp[k + 1];
        (&self.ir[r.clone()], &self.num[r])
    }

    /// Position in `jc` of column `j`, if it holds any entry.
    pub fn find_column(&self, j: usize) -> Option<usize> {
        self.jc.binary_search(&j).ok()
    }

    pub fn get(&self, i: usize, j: usize) -> Option<Value> {
        let k = self.find_column(j)?;
        let (rows, vals) = self.column(k);
        rows.binary_search(&i).ok().map(|p| vals[p])
    }

    /// Entries in column-major order.
    pub fn iter(&self) -> impl Iterator<Item = Triple> + '_ {
        self.jc.iter().enumerate().flat_map(move |(k, &j)| {
            let (rows, vals) = self.column(k);
            rows.iter().zip(vals).map(move |(&i, &v)| Triple::new(i, j, v))
        })
    }

    pub fn to_triples(&self) -> Vec<Triple> {
        self.iter().collect()
    }

    /// Checks every structural invariant. Used by tests and debug assertions.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::DimensionMismatch(format!("invalid DCSC: {msg}")));
        if self.cp.len() != self.jc.len() + 1 || self.cp[0] != 0 {
            return bad("cp length or origin");
        }
        if self.ir.len() != self.num.len() || *self.cp.last().unwrap() != self.ir.len() {
            return bad("ir/num/cp length");
        }
        for w in self.jc.windows(2) {
            if w[0] >= w[1] {
                return bad("jc not strictly increasing");
            }
        }
        if self.jc.last().is_some_and(|&j| j >= self.ncols) {
            return bad("column out of range");
        }
        for k in 0..self.jc.len() {
            if self.cp[k + 1] <= self.cp[k] {
                return bad("empty listed column");
            }
            let (rows, _) = self.column(k);
            if rows.windows(2).any(|w| w[0] >= w[1]) {
                return bad("rows not strictly increasing");
            }
            if rows.last().is_some_and(|&i| i >= self.nrows) {
                return bad("row out of range");
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(i: usize, j: usize, v: f64) -> Triple {
        Triple::new(i, j, v)
    }

    #[test]
    fn packs_small_example() {
        let input = [t(0, 1, 5.0), t(2, 1, 7.0), t(2, 3, 8.0)];
        let m = LocalDcsc::from_sorted_triples(&input, 4, 4).unwrap();
        assert_eq!(m.jc(), &[1, 3]);
        assert_eq!(m.cp(), &[0, 2, 3]);
        assert_eq!(m.ir(), &[0, 2, 2]);
        assert_eq!(m.num(), &[5.0, 7.0, 8.0]);
        assert_eq!(m.to_triples(), input);
        m.validate().unwrap();
    }

    #[test]
    fn empty_matrix() {
        let m = LocalDcsc::from_sorted_triples(&[], 4, 4).unwrap();
        assert!(m.jc().is_empty());
        assert_eq!(m.cp(), &[0]);
        assert!(m.ir().is_empty() && m.num().is_empty());
        assert_eq!(m, LocalDcsc::empty(4, 4));
        assert_eq!(m.iter().count(), 0);
    }

    #[test]
    fn single_column() {
        let m = LocalDcsc::from_sorted_triples(&[t(3, 0, 1.0)], 4, 1).unwrap();
        assert_eq!(m.cp(), &[0, 1]);
        assert_eq!(m.get(3, 0), Some(1.0));
        assert_eq!(m.get(2, 0), None);
    }

    #[test]
    fn rejects_duplicates() {
        let err = LocalDcsc::from_sorted_triples(&[t(1, 1, 1.0), t(1, 1, 2.0)], 3, 3).unwrap_err();
        assert!(matches!(err, Error::DuplicateCoordinate { row: 1, col: 1 }));
    }

    #[test]
    fn rejects_unsorted() {
        let err = LocalDcsc::from_sorted_triples(&[t(0, 2, 1.0), t(0, 1, 2.0)], 3, 3).unwrap_err();
        assert!(matches!(err, Error::UnsortedInput { position: 1 }));
        let err = LocalDcsc::from_sorted_triples(&[t(2, 1, 1.0), t(0, 1, 2.0)], 3, 3).unwrap_err();
        assert!(matches!(err, Error::UnsortedInput { position: 1 }));
    }

    #[test]
    fn rejects_out_of_bounds() {
        let err = LocalDcsc::from_sorted_triples(&[t(3, 0, 1.0)], 3, 3).unwrap_err();
        assert!(matches!(err, Error::IndexOutOfBounds { index: 3, .. }));
        let err = LocalDcsc::from_sorted_triples(&[t(0, 5, 1.0)], 3, 3).unwrap_err();
        assert!(matches!(err, Error::IndexOutOfBounds { index: 5, .. }));
    }

    #[test]
    fn explicit_zero_is_structural() {
        let m = LocalDcsc::from_sorted_triples(&[t(0, 0, 0.0)], 1, 1).unwrap();
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(0, 0), Some(0.0));
    }
}
