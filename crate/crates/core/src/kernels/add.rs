use crate::dcsc::LocalDcsc;
use crate::error::{Error, Result};
use crate::types::{apply_addop, AddOp, Triple};

/// Pattern-union addition of two blocks. Where both hold an entry the result
/// is `apply_addop(op, a, b)`.
pub fn local_add(a: &LocalDcsc, b: &LocalDcsc, op: AddOp) -> Result<LocalDcsc> {
    if a.nrows() != b.nrows() || a.ncols() != b.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "cannot add a {}x{} block to a {}x{} block",
            b.nrows(),
            b.ncols(),
            a.nrows(),
            a.ncols()
        )));
    }
    if b.is_empty() {
        return Ok(a.clone());
    }
    let mut out = Vec::with_capacity(a.nnz() + b.nnz());
    let mut xs = a.iter().peekable();
    let mut ys = b.iter().peekable();
    loop {
        match (xs.peek(), ys.peek()) {
            (Some(x), Some(y)) => {
                if x.key() < y.key() {
                    out.push(*x);
                    xs.next();
                } else if y.key() < x.key() {
                    out.push(*y);
                    ys.next();
                } else {
                    out.push(Triple::new(x.lrow, x.lcol, apply_addop(op, x.val, y.val)));
                    xs.next();
                    ys.next();
                }
            }
            (Some(_), None) => out.extend(xs.by_ref()),
            (None, Some(_)) => out.extend(ys.by_ref()),
            (None, None) => break,
        }
    }
    LocalDcsc::from_sorted_triples(&out, a.nrows(), a.ncols())
}
